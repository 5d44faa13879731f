#include "splitsolve/problem_io.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace splitsolve {

using nlohmann::json;

GaussianMixture standard_mixture() {
    const int d = 8;
    std::vector<Vec> means(4, Vec(d, 0.0));
    means[0][0] = -1.5;
    means[1][0] = -0.5;
    means[2][0] = 0.5;
    means[3][0] = 1.5;
    return GaussianMixture({0.25, 0.25, 0.25, 0.25}, means, {0.25, 0.25, 0.25, 0.25},
                           {0, 1, 0, 1});
}

LoadedProblem standard_mixture_problem(double field_cost_us) {
    const GaussianMixture mix = standard_mixture();
    LoadedProblem p;
    p.dimension = mix.dimension();
    p.sigma_max = 10.0;
    p.sigma_min = 0.01;
    p.tag = "standard-mixture";
    p.problem = GuidedProblem::guided(mixture_field(mix, field_cost_us),
                                      class_potential(mix, 1), 1.0);
    return p;
}

namespace {

GaussianMixture mixture_from_json(const json& j) {
    std::vector<double> weights = j.at("weights").get<std::vector<double>>();
    std::vector<Vec> means;
    for (const auto& m : j.at("means")) means.push_back(m.get<Vec>());
    std::vector<double> variances = j.at("variances").get<std::vector<double>>();
    std::vector<int> labels = j.at("labels").get<std::vector<int>>();
    return GaussianMixture(std::move(weights), std::move(means), std::move(variances),
                           std::move(labels));
}

LinearObservation observation_from_json(const json& j, int dimension) {
    const std::string kind = j.at("operator_kind").get<std::string>();
    Matrix op;
    if (kind == "mask") {
        op = mask_projector(dimension, j.at("indices").get<std::vector<int>>());
    } else if (kind == "color") {
        if (dimension != 3)
            throw std::invalid_argument("color observation needs a 3-dimensional problem");
        const Matrix c = color_matrix();
        const Matrix p = mask_projector(3, {0});
        op = p.multiply(c);
    } else if (kind == "downsample") {
        op = downsample_operator(dimension, j.at("factor").get<int>());
    } else {
        throw std::invalid_argument("unknown operator_kind: '" + kind + "'");
    }
    Vec y0 = j.at("y0").get<Vec>();
    const double gamma = j.at("gamma").get<double>();
    auto mode = LinearObservation::EtaMode::deterministic;
    if (j.contains("eta_mode") && j.at("eta_mode").get<std::string>() == "stochastic")
        mode = LinearObservation::EtaMode::stochastic;
    return LinearObservation(std::move(op), std::move(y0), gamma, mode);
}

}  // namespace

LoadedProblem parse_problem(const std::string& text, double field_cost_us) {
    const json j = json::parse(text);
    const std::string kind = j.value("kind", "mixture");

    const json& mix_json = (kind == "observation") ? j.at("base") : j;
    const GaussianMixture mix = mixture_from_json(mix_json);

    LoadedProblem p;
    p.dimension = mix.dimension();
    p.sigma_max = j.value("sigma_max", 10.0);
    p.sigma_min = j.value("sigma_min", 0.01);

    std::ostringstream tag;
    tag << kind << '#' << std::hash<std::string>{}(j.dump());
    p.tag = tag.str();

    if (kind == "mixture") {
        const int c = j.at("class").get<int>();
        const double scale = j.value("guidance_scale", 1.0);
        p.problem =
            GuidedProblem::guided(mixture_field(mix, field_cost_us), class_potential(mix, c), scale);
        return p;
    }
    if (kind == "observation") {
        const LinearObservation obs = observation_from_json(j, mix.dimension());
        const double scale = j.value("guidance_scale", 1.0);
        p.problem = GuidedProblem::guided(mixture_field(mix, field_cost_us),
                                          observation_guidance(obs, mix), scale);
        return p;
    }
    throw std::invalid_argument("unknown problem kind: '" + kind + "'");
}

LoadedProblem load_problem(const std::string& path, double field_cost_us) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), field_cost_us);
}

}  // namespace splitsolve
