#pragma once

#include <cstdint>
#include <vector>

#include "splitsolve/fields.hpp"
#include "splitsolve/vec.hpp"

namespace splitsolve {

/// Linear measurement y = M x plus a quadratic penalty, covering inpainting
/// masks, the grayscale color transform, and average-pool downsampling.
struct LinearObservation {
    enum class EtaMode { deterministic, stochastic };

    Matrix op;        // measurement matrix M (mask projector, P*C, or D)
    Vec target;       // y0, length = op.rows
    double gamma;     // penalty control parameter, > 0
    EtaMode eta_mode = EtaMode::deterministic;

    LinearObservation(Matrix op, Vec target, double gamma,
                      EtaMode mode = EtaMode::deterministic);
};

// d x d diagonal 0/1 projector keeping the listed coordinates.
Matrix mask_projector(int dimension, const std::vector<int>& kept_indices);

// 3x3 grayscale/chroma transform with the rounded constants 0.577, -0.816,
// 0.408, 0.707; orthogonal to about 1.3e-3 because of the rounding.
Matrix color_matrix();

// (length/factor) x length average-pooling over non-overlapping windows.
// Its plain transpose serves as the upsampling adjoint.
Matrix downsample_operator(int length, int factor);

// x_{t-1} = (I - M^T M) x' + M^T y: observed coordinates come from the
// forward-diffused observation, the rest from the sampler iterate.
Vec impose_step(const LinearObservation& obs, const Vec& x_prime, const Vec& y_prev);

// f(xbar) = ||y0 - M x0hat(xbar)||^2 / (2 gamma) with
// x0hat(xbar) = xbar - sigma * eps(sigma, xbar).
double observation_potential(const LinearObservation& obs, const GaussianMixture& mix,
                             double sigma, const Vec& xbar);

// Analytic gradient through x0hat using the mixture field's Jacobian.
Vec observation_potential_gradient(const LinearObservation& obs, const GaussianMixture& mix,
                                   double sigma, const Vec& xbar);

GuidancePotential observation_guidance(const LinearObservation& obs, const GaussianMixture& mix,
                                       double cost_us = 0.0);

// Forward-diffuses the clean observation y0 to the sigma_to level:
//   y ~ N( sqrt(abar_to) y0 + sqrt(1 - abar_to - eta^2) eps, eta^2 I ),
// with abar = 1/(1+sigma^2), eps the field's prediction at (sigma_from, y0),
// and eta^2 = (1-abar_to)/(1-abar_from) * (1 - abar_from/abar_to).
// Deterministic mode forces eta = 0; stochastic mode is seeded.
Vec forward_observation_sample(const LinearObservation& obs, const DiffusionField& field,
                               double sigma_from, double sigma_to, const Vec& y0, uint64_t seed);

}  // namespace splitsolve
