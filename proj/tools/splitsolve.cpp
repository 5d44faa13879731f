// Experiment driver: guided-sampling sweeps, stability tables, toy-problem
// error studies, convergence-order estimation, coefficient dumps, and a
// per-step timing benchmark. Reports are plain CSV/JSON for external
// plotting; all randomness flows from explicit seed lists.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "splitsolve/analysis.hpp"
#include "splitsolve/problem_io.hpp"
#include "splitsolve/report_io.hpp"
#include "splitsolve/sampler.hpp"
#include "splitsolve/schedule.hpp"
#include "splitsolve/solvers.hpp"
#include "splitsolve/stability.hpp"

namespace ss = splitsolve;

namespace {

std::vector<uint64_t> parse_seed_spec(const std::string& spec) {
    std::vector<uint64_t> seeds;
    std::stringstream items(spec);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            seeds.push_back(std::stoull(item));
            continue;
        }
        const uint64_t lo = std::stoull(item.substr(0, dots));
        const uint64_t hi = std::stoull(item.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--seeds", "range '" + item + "' is reversed");
        for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
    return seeds;
}

ss::LoadedProblem resolve_problem(const std::string& path, double field_cost_us) {
    if (path.empty()) return ss::standard_mixture_problem(field_cost_us);
    return ss::load_problem(path, field_cost_us);
}

void write_file(const std::string& path, const std::string& content) {
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

int default_jobs() {
    if (const char* env = std::getenv("SPLITSOLVE_JOBS")) return std::max(1, std::atoi(env));
    return 1;
}

int run_sample(const std::string& problem_path, const std::vector<std::string>& scheme_strs,
               const std::vector<int>& steps, const std::string& seed_spec, int reference_steps,
               const std::string& out_path, double sigma_max_override, double sigma_min_override,
               int jobs, bool benchmark, double field_cost_us) {
    auto loaded = resolve_problem(problem_path, field_cost_us);

    ss::SamplerOptions opts;
    opts.sigma_max = sigma_max_override > 0 ? sigma_max_override : loaded.sigma_max;
    opts.sigma_min = sigma_min_override > 0 ? sigma_min_override : loaded.sigma_min;
    opts.reference_steps = reference_steps;
    opts.jobs = jobs;
    opts.benchmark = benchmark;

    std::vector<ss::SplitScheme> schemes;
    for (const auto& s : scheme_strs) schemes.push_back(ss::SplitScheme::parse(s));

    const auto reports =
        ss::sweep(loaded.problem, loaded.tag, schemes, steps, parse_seed_spec(seed_spec), opts);

    std::ostringstream csv;
    ss::write_sample_csv(csv, reports);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_file(out_path, csv.str());

    std::cout << std::fixed << std::setprecision(6);
    for (const auto& s : ss::summarize(reports))
        std::cout << s.scheme << " steps=" << s.steps << " mean=" << s.mean_error
                  << " std=" << s.stddev_error << " diverged=" << s.diverged << "/" << s.cells
                  << "\n";
    return 0;
}

int run_stability(const std::vector<double>& s_values, const std::string& out_path, bool scan,
                  int scan_max) {
    const auto grid = s_values.empty() ? ss::default_stiffness_grid() : s_values;
    const auto table = ss::stability_table(grid);

    std::ostringstream csv;
    ss::write_stability_csv(csv, table);
    if (!out_path.empty()) write_file(out_path, csv.str());

    std::cout << "method";
    for (double s : grid) std::cout << "\ts=" << s;
    std::cout << "\n";
    for (const char* method : {"euler", "plms2", "ltsp2", "stsp2"}) {
        std::cout << method;
        for (const auto& row : table)
            if (row.method == method) std::cout << '\t' << row.min_stable_steps;
        std::cout << "\n";
    }

    if (scan) {
        std::cout << "empirical scan (bounded + contracting):\n";
        for (const char* method : {"euler", "plms2", "ltsp2", "stsp2"}) {
            std::cout << method;
            for (double s : grid) {
                const auto n = ss::empirical_divergence_scan(method, s, scan_max);
                std::cout << '\t' << (n ? std::to_string(*n) : std::string("none"));
            }
            std::cout << "\n";
        }
    }
    return 0;
}

int run_toy(const std::vector<std::string>& scheme_strs, const std::vector<double>& s_values,
            const std::vector<int>& steps, const std::string& out_path,
            const std::string& dump_dir) {
    std::vector<ss::SplitScheme> schemes;
    for (const auto& s : scheme_strs) schemes.push_back(ss::SplitScheme::parse(s));
    const auto rows = ss::toy_error_study(schemes, s_values, steps);

    std::ostringstream csv;
    ss::write_toy_csv(csv, rows);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_file(out_path, csv.str());

    if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        for (const auto& scheme : schemes)
            for (double s : s_values)
                for (int n : steps) {
                    const auto traj = ss::toy_trajectory(scheme, s, n);
                    std::ostringstream name;
                    name << dump_dir << "/toy_" << scheme.to_string() << "_s" << s << "_N" << n
                         << ".json";
                    write_file(name.str(), ss::trajectory_json(traj));
                }
    }
    return 0;
}

int run_order(const std::string& scheme_str, const std::string& testbed, double s,
              const std::vector<int>& steps, const std::string& out_path) {
    const auto scheme = ss::SplitScheme::parse(scheme_str);
    ss::ExactProblem problem = [&] {
        if (testbed == "toy") return ss::toy_order_problem(s);
        if (testbed == "gaussian")
            return ss::gaussian_flow_order_problem(ss::Vec(4, 0.0), 1.0, 10.0, 0.05,
                                                   ss::Vec{1.0, -2.0, 0.5, 3.0});
        throw CLI::ValidationError("--testbed", "must be 'toy' or 'gaussian'");
    }();

    const auto est = ss::estimate_order(problem, scheme, steps);
    std::cout << std::setprecision(12);
    std::cout << "scheme=" << est.scheme << " testbed=" << problem.label << "\n";
    for (size_t i = 0; i < est.step_counts.size(); ++i)
        std::cout << "N=" << est.step_counts[i] << " error=" << est.errors[i] << "\n";
    std::cout << "slope=" << est.slope << " fit_residual=" << est.fit_residual << "\n";

    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "scheme,testbed,steps,error,slope,fit_residual\n";
        csv << std::setprecision(17);
        for (size_t i = 0; i < est.step_counts.size(); ++i)
            csv << est.scheme << ',' << problem.label << ',' << est.step_counts[i] << ','
                << est.errors[i] << ',' << est.slope << ',' << est.fit_residual << '\n';
        write_file(out_path, csv.str());
    }
    return 0;
}

int run_coeffs(int order, double b, int rows) {
    std::cout << "multistep combination weights (order " << order << "):\n";
    std::cout << std::fixed << std::setprecision(2);
    for (int step = 1; step <= rows; ++step) {
        const int c = std::min(order, step);
        const auto w = ss::plms_coefficients(order, c);
        std::cout << step << ":";
        for (int k = 0; k < order; ++k)
            std::cout << '\t' << (k < static_cast<int>(w.size()) ? w[k] : 0.0);
        std::cout << "\n";
    }
    if (b < 0.0) {
        std::cout << std::setprecision(6);
        const auto vw = ss::glms_coefficients(b, 4, ss::GlmsMode::verbatim);
        const auto cw = ss::glms_coefficients(b, 4, ss::GlmsMode::corrected);
        std::cout << "sigma-aware correction weights at b=" << b << ":\n";
        std::cout << "verbatim:  " << vw.first << '\t' << vw.second << '\t' << vw.third << "\n";
        std::cout << "corrected: " << cw.first << '\t' << cw.second << '\t' << cw.third << "\n";
    }
    return 0;
}

int run_bench(const std::vector<std::string>& scheme_strs, int steps, double field_cost_us,
              const std::string& problem_path) {
    auto loaded = resolve_problem(problem_path, field_cost_us);
    const auto schedule = ss::SigmaSchedule::log_linear(loaded.sigma_max, loaded.sigma_min, steps);
    const ss::Vec x0 = ss::sample_initial(loaded.dimension, loaded.sigma_max, 0);

    std::cout << "scheme\tsteps\tfield_nfe\tpotential_nfe\twall_s\tus_per_step\n";
    std::cout << std::fixed << std::setprecision(3);
    for (const auto& str : scheme_strs) {
        const auto scheme = ss::SplitScheme::parse(str);
        const auto traj = ss::solve(loaded.problem, schedule.levels(), scheme, x0);
        std::cout << str << '\t' << steps << '\t' << traj.field_nfe << '\t' << traj.potential_nfe
                  << '\t' << traj.wall_time_s << '\t' << 1e6 * traj.wall_time_s / steps << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-splitting solvers for guided probability-flow ODEs"};
    app.require_subcommand(1);

    std::string problem_path, out_path, seed_spec = "0..31", dump_dir, testbed = "toy";
    std::string order_scheme = "none:euler";
    std::vector<std::string> schemes{"none:euler"};
    std::vector<int> steps{25};
    std::vector<double> s_values;
    int reference_steps = 1000, jobs = default_jobs(), scan_max = 200, coeff_order = 4,
        coeff_rows = 10, bench_steps = 100;
    double sigma_max = 0.0, sigma_min = 0.0, field_cost = 0.0, toy_s = 1.0, coeff_b = 0.0;
    bool benchmark = false, scan = false;

    auto* sample = app.add_subcommand("sample", "sweep schemes against seeded references");
    sample->add_option("--problem", problem_path, "problem JSON (defaults to the built-in mixture)");
    sample->add_option("--scheme", schemes, "scheme strings (none:<m>, ltsp:<d>,<c>, stsp:<d>,<c>, ltsp2/4, stsp2/4)");
    sample->add_option("--steps", steps, "step counts")->delimiter(',');
    sample->add_option("--seeds", seed_spec, "seed list/ranges, e.g. 0..31 or 0,7,9");
    sample->add_option("--reference-steps", reference_steps, "reference solve step count");
    sample->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    sample->add_option("--sigma-max", sigma_max, "override problem sigma_max");
    sample->add_option("--sigma-min", sigma_min, "override problem sigma_min");
    sample->add_option("--jobs", jobs, "parallel workers (env SPLITSOLVE_JOBS)");
    sample->add_flag("--benchmark", benchmark, "serial execution for timing fidelity");
    sample->add_option("--field-cost", field_cost, "artificial microseconds per field evaluation");

    auto* stability = app.add_subcommand("stability", "analytic stability thresholds");
    stability->add_option("--s-values", s_values, "stiffness scales (default 5..80 grid)")->delimiter(',');
    stability->add_option("--out", out_path, "CSV output path");
    stability->add_flag("--scan", scan, "also run the empirical divergence scan");
    stability->add_option("--scan-max", scan_max, "largest N for the scan");

    auto* toy = app.add_subcommand("toy", "stiff testbed endpoint errors");
    toy->add_option("--schemes", schemes, "scheme strings");
    toy->add_option("--s-values", s_values, "stiffness scales")->delimiter(',');
    toy->add_option("--steps", steps, "step counts")->delimiter(',');
    toy->add_option("--out", out_path, "CSV output path");
    toy->add_option("--dump-trajectories", dump_dir, "directory for per-trajectory JSON");

    auto* order = app.add_subcommand("order", "empirical convergence order");
    order->add_option("--scheme", order_scheme, "scheme string");
    order->add_option("--testbed", testbed, "toy | gaussian");
    order->add_option("--s", toy_s, "toy stiffness scale");
    order->add_option("--steps", steps, "ascending step counts (>= 4 spanning 8x)")->delimiter(',');
    order->add_option("--out", out_path, "CSV output path");

    auto* coeffs = app.add_subcommand("coeffs", "multistep coefficient tables");
    coeffs->add_option("--order", coeff_order, "method order 1..4");
    coeffs->add_option("--rows", coeff_rows, "steps to tabulate");
    coeffs->add_option("--b", coeff_b, "log-step ratio for sigma-aware weights (< 0)");

    auto* bench = app.add_subcommand("bench", "per-step wall-time microbenchmark (serial)");
    bench->add_option("--schemes", schemes, "scheme strings");
    bench->add_option("--steps", bench_steps, "step count");
    bench->add_option("--field-cost", field_cost, "artificial microseconds per field evaluation");
    bench->add_option("--problem", problem_path, "problem JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed())
            return run_sample(problem_path, schemes, steps, seed_spec, reference_steps, out_path,
                              sigma_max, sigma_min, jobs, benchmark, field_cost);
        if (stability->parsed()) return run_stability(s_values, out_path, scan, scan_max);
        if (toy->parsed()) {
            if (s_values.empty()) s_values = {3.0, 5.0};
            if (toy->count("--steps") == 0) steps = {10, 15, 20};
            return run_toy(schemes, s_values, steps, out_path, dump_dir);
        }
        if (order->parsed()) {
            if (order->count("--steps") == 0) steps = {40, 80, 160, 320};
            return run_order(order_scheme, testbed, toy_s, steps, out_path);
        }
        if (coeffs->parsed()) return run_coeffs(coeff_order, coeff_b, coeff_rows);
        if (bench->parsed()) return run_bench(schemes, bench_steps, field_cost, problem_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
