#pragma once

#include <string>

#include "splitsolve/fields.hpp"
#include "splitsolve/observation.hpp"
#include "splitsolve/splitting.hpp"

namespace splitsolve {

/// A guided-sampling task assembled from a problem file: the split fields,
/// the sigma range it was configured with, and a tag for reference caching.
struct LoadedProblem {
    GuidedProblem problem;
    int dimension = 0;
    double sigma_max = 10.0;
    double sigma_min = 0.01;
    std::string tag;
};

// The default testbed: d=8, four unit-spaced isotropic components
// (variance 0.25) alternating between two classes, guiding toward class 1
// with unit scale over sigma in [0.01, 10].
GaussianMixture standard_mixture();
LoadedProblem standard_mixture_problem(double field_cost_us = 0.0);

// Parses a problem JSON document. "kind": "mixture" takes
// {weights, means, variances, labels, class, guidance_scale, sigma_max,
//  sigma_min}; "kind": "observation" adds {operator_kind (mask|color|
// downsample), indices | factor, y0, gamma, eta_mode} over a base mixture.
LoadedProblem parse_problem(const std::string& json_text, double field_cost_us = 0.0);
LoadedProblem load_problem(const std::string& path, double field_cost_us = 0.0);

}  // namespace splitsolve
