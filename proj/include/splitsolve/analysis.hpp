#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitsolve/splitting.hpp"

namespace splitsolve {

/// A split problem with a closed-form endpoint, as needed for empirical
/// order measurement. The grid builder returns N+1 monotone levels.
struct ExactProblem {
    std::string label;
    GuidedProblem fields;
    std::function<std::vector<double>(int)> grid;
    Vec initial;
    Vec exact_endpoint;
};

// The 2-D stiff testbed integrated in plain time over [0, t_end].
ExactProblem toy_order_problem(double s, double t_end = 1.0);

// Single isotropic Gaussian, whose probability-flow trajectory is the
// closed-form contraction x(sigma) = mu + (x0 - mu) sqrt((v+sigma^2)/(v+sigma_max^2)).
ExactProblem gaussian_flow_order_problem(const Vec& mean, double variance, double sigma_max,
                                         double sigma_min, const Vec& x0);

struct OrderEstimate {
    std::string scheme;
    std::vector<int> step_counts;
    std::vector<double> errors;  // endpoint error per step count
    double slope = 0.0;          // log(error) vs log(1/N) least squares
    double fit_residual = 0.0;   // rms residual of the fit
};

// Requires >= 4 ascending step counts spanning at least a factor of 8; cells
// below the 1e-12 roundoff floor are dropped from the fit; a diverged cell
// invalidates the estimate.
OrderEstimate estimate_order(const ExactProblem& problem, const SplitScheme& scheme,
                             std::vector<int> step_counts);

struct ToyStudyRow {
    std::string scheme;
    double s = 0.0;
    int steps = 0;
    double endpoint_error = 0.0;
    std::optional<int> diverged_at;
};

// Endpoint absolute error against the closed form per (scheme, s, N) cell.
std::vector<ToyStudyRow> toy_error_study(const std::vector<SplitScheme>& schemes,
                                         const std::vector<double>& s_values,
                                         const std::vector<int>& step_counts);

// Full trajectory for one toy cell, for dump/plotting.
Trajectory toy_trajectory(const SplitScheme& scheme, double s, int steps);

}  // namespace splitsolve
