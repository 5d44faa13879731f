#pragma once

#include <span>
#include <string>
#include <vector>

#include "splitsolve/vec.hpp"

namespace splitsolve {

/// Decreasing grid of noise levels sigma_0 > sigma_1 > ... > sigma_N > 0.
///
/// Levels are stored explicitly so externally derived schedules can be
/// injected; the log-linear generator is the default, with ln(sigma) affine
/// in the index and the endpoints hit exactly.
class SigmaSchedule {
  public:
    static SigmaSchedule log_linear(double sigma_max, double sigma_min, int steps);

    // Validates monotonicity/positivity of an externally supplied grid.
    static SigmaSchedule from_levels(std::vector<double> levels);

    int steps() const { return static_cast<int>(levels_.size()) - 1; }
    double operator[](int n) const { return levels_.at(n); }
    std::span<const double> levels() const { return levels_; }

    // ln(sigma_{n+1}) - ln(sigma_n); negative on any valid schedule and
    // constant across n for log-linear ones.
    double step_log_ratio(int n) const;

    std::string to_json() const;
    static SigmaSchedule from_json(const std::string& text);

  private:
    explicit SigmaSchedule(std::vector<double> levels) : levels_(std::move(levels)) {}
    std::vector<double> levels_;
};

// sigma = sqrt(1 - abar) / sqrt(abar), the noise-to-signal level of the
// abar parameterization; strictly decreasing in abar on (0, 1).
double sigma_from_alpha_bar(double alpha_bar);

// Inverse map, abar = 1 / (1 + sigma^2).
double alpha_bar_from_sigma(double sigma);

// Rescaled state xbar = x / sqrt(abar) and its inverse.
Vec to_xbar(const Vec& x, double alpha_bar);
Vec from_xbar(const Vec& xbar, double alpha_bar);

}  // namespace splitsolve
