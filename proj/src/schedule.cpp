#include "splitsolve/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace splitsolve {

SigmaSchedule SigmaSchedule::log_linear(double sigma_max, double sigma_min, int steps) {
    if (!(sigma_min > 0.0))
        throw std::invalid_argument("sigma_min must be positive");
    if (!(sigma_max > sigma_min))
        throw std::invalid_argument("sigma_max must exceed sigma_min");
    if (steps < 1)
        throw std::invalid_argument("step count must be at least 1");

    const double la = std::log(sigma_max);
    const double lb = std::log(sigma_min);
    std::vector<double> levels(steps + 1);
    for (int n = 0; n <= steps; ++n)
        levels[n] = std::exp(la + (static_cast<double>(n) / steps) * (lb - la));
    levels.front() = sigma_max;
    levels.back() = sigma_min;
    return SigmaSchedule(std::move(levels));
}

SigmaSchedule SigmaSchedule::from_levels(std::vector<double> levels) {
    if (levels.size() < 2)
        throw std::invalid_argument("schedule needs at least two levels");
    for (size_t n = 0; n < levels.size(); ++n) {
        if (!(levels[n] > 0.0))
            throw std::invalid_argument("sigma levels must be positive");
        if (n > 0 && !(levels[n] < levels[n - 1]))
            throw std::invalid_argument("sigma levels must be strictly decreasing");
    }
    return SigmaSchedule(std::move(levels));
}

double SigmaSchedule::step_log_ratio(int n) const {
    if (n < 0 || n >= steps())
        throw std::out_of_range("schedule index out of range");
    return std::log(levels_[n + 1]) - std::log(levels_[n]);
}

std::string SigmaSchedule::to_json() const {
    return nlohmann::json(levels_).dump();
}

SigmaSchedule SigmaSchedule::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return from_levels(j.get<std::vector<double>>());
}

double sigma_from_alpha_bar(double alpha_bar) {
    if (!(alpha_bar > 0.0 && alpha_bar < 1.0))
        throw std::invalid_argument("alpha_bar must lie in (0, 1)");
    return std::sqrt(1.0 - alpha_bar) / std::sqrt(alpha_bar);
}

double alpha_bar_from_sigma(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sigma must be positive");
    return 1.0 / (1.0 + sigma * sigma);
}

Vec to_xbar(const Vec& x, double alpha_bar) {
    if (!(alpha_bar > 0.0 && alpha_bar < 1.0))
        throw std::invalid_argument("alpha_bar must lie in (0, 1)");
    return (1.0 / std::sqrt(alpha_bar)) * x;
}

Vec from_xbar(const Vec& xbar, double alpha_bar) {
    if (!(alpha_bar > 0.0 && alpha_bar < 1.0))
        throw std::invalid_argument("alpha_bar must lie in (0, 1)");
    return std::sqrt(alpha_bar) * xbar;
}

}  // namespace splitsolve
