#include "splitsolve/report_io.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace splitsolve {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

std::string format_double(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void expect_header(std::istream& in, const std::string& expected) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv");
    if (line != expected)
        throw std::runtime_error("unexpected csv header: '" + line + "'");
}

}  // namespace

void write_sample_csv(std::ostream& out, const std::vector<SolveReport>& reports) {
    out << "scheme,steps,seed,endpoint_error,field_nfe,potential_nfe,wall_time_s,diverged_at\n";
    for (const auto& r : reports) {
        out << r.scheme << ',' << r.steps << ',' << r.seed << ','
            << format_double(r.endpoint_error) << ',' << r.field_nfe << ',' << r.potential_nfe
            << ',' << format_double(r.wall_time_s) << ',';
        if (r.diverged_at) out << *r.diverged_at;
        out << '\n';
    }
}

std::vector<SolveReport> read_sample_csv(std::istream& in) {
    expect_header(in,
                  "scheme,steps,seed,endpoint_error,field_nfe,potential_nfe,wall_time_s,diverged_at");
    std::vector<SolveReport> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw std::runtime_error("bad sample csv row: '" + line + "'");
        SolveReport r;
        r.scheme = f[0];
        r.steps = std::stoi(f[1]);
        r.seed = std::stoull(f[2]);
        r.endpoint_error = parse_double(f[3]);
        r.field_nfe = std::stol(f[4]);
        r.potential_nfe = std::stol(f[5]);
        r.wall_time_s = parse_double(f[6]);
        if (!f[7].empty()) r.diverged_at = std::stoi(f[7]);
        out.push_back(std::move(r));
    }
    return out;
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityReport>& rows) {
    out << "method,s,min_stable_N,root1_mod,root2_mod\n";
    for (const auto& r : rows)
        out << r.method << ',' << format_double(r.s) << ',' << r.min_stable_steps << ','
            << format_double(r.root1_mod) << ',' << format_double(r.root2_mod) << '\n';
}

std::vector<StabilityReport> read_stability_csv(std::istream& in) {
    expect_header(in, "method,s,min_stable_N,root1_mod,root2_mod");
    std::vector<StabilityReport> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw std::runtime_error("bad stability csv row: '" + line + "'");
        StabilityReport r;
        r.method = f[0];
        r.s = parse_double(f[1]);
        r.min_stable_steps = std::stoi(f[2]);
        r.root1_mod = parse_double(f[3]);
        r.root2_mod = parse_double(f[4]);
        out.push_back(std::move(r));
    }
    return out;
}

void write_toy_csv(std::ostream& out, const std::vector<ToyStudyRow>& rows) {
    out << "scheme,s,steps,endpoint_error,diverged_at\n";
    for (const auto& r : rows) {
        out << r.scheme << ',' << format_double(r.s) << ',' << r.steps << ','
            << format_double(r.endpoint_error) << ',';
        if (r.diverged_at) out << *r.diverged_at;
        out << '\n';
    }
}

std::vector<ToyStudyRow> read_toy_csv(std::istream& in) {
    expect_header(in, "scheme,s,steps,endpoint_error,diverged_at");
    std::vector<ToyStudyRow> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw std::runtime_error("bad toy csv row: '" + line + "'");
        ToyStudyRow r;
        r.scheme = f[0];
        r.s = parse_double(f[1]);
        r.steps = std::stoi(f[2]);
        r.endpoint_error = parse_double(f[3]);
        if (!f[4].empty()) r.diverged_at = std::stoi(f[4]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string trajectory_json(const Trajectory& traj) {
    nlohmann::json j;
    j["grid"] = traj.grid;
    j["states"] = traj.states;
    j["field_nfe"] = traj.field_nfe;
    j["potential_nfe"] = traj.potential_nfe;
    j["wall_time_s"] = traj.wall_time_s;
    if (traj.diverged_at)
        j["diverged_at"] = *traj.diverged_at;
    else
        j["diverged_at"] = nullptr;
    return j.dump();
}

}  // namespace splitsolve
