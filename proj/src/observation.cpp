#include "splitsolve/observation.hpp"

#include <cmath>
#include <stdexcept>

#include "splitsolve/rng.hpp"
#include "splitsolve/schedule.hpp"

namespace splitsolve {

LinearObservation::LinearObservation(Matrix m, Vec y, double g, EtaMode mode)
    : op(std::move(m)), target(std::move(y)), gamma(g), eta_mode(mode) {
    if (target.size() != op.rows)
        throw std::invalid_argument("observation target length must match operator rows");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
}

Matrix mask_projector(int dimension, const std::vector<int>& kept_indices) {
    if (dimension < 1) throw std::invalid_argument("dimension must be positive");
    Matrix p(dimension, dimension);
    for (int idx : kept_indices) {
        if (idx < 0 || idx >= dimension)
            throw std::invalid_argument("mask index out of range");
        p(idx, idx) = 1.0;
    }
    return p;
}

Matrix color_matrix() {
    Matrix c(3, 3);
    c(0, 0) = 0.577; c(0, 1) = -0.816; c(0, 2) = 0.0;
    c(1, 0) = 0.577; c(1, 1) = 0.408;  c(1, 2) = 0.707;
    c(2, 0) = 0.577; c(2, 1) = 0.408;  c(2, 2) = -0.707;
    return c;
}

Matrix downsample_operator(int length, int factor) {
    if (length < 1 || factor < 1) throw std::invalid_argument("length and factor must be positive");
    if (length % factor != 0)
        throw std::invalid_argument("downsample factor must divide the length");
    Matrix d(length / factor, length);
    const double w = 1.0 / factor;
    for (int i = 0; i < length / factor; ++i)
        for (int j = 0; j < factor; ++j) d(i, i * factor + j) = w;
    return d;
}

Vec impose_step(const LinearObservation& obs, const Vec& x_prime, const Vec& y_prev) {
    if (x_prime.size() != obs.op.cols)
        throw std::invalid_argument("iterate dimension must match operator columns");
    if (y_prev.size() != obs.op.rows)
        throw std::invalid_argument("observation dimension must match operator rows");
    // (I - M^T M) x' + M^T y
    Vec mtm_x = obs.op.apply_transposed(obs.op.apply(x_prime));
    Vec out = x_prime - mtm_x;
    return out + obs.op.apply_transposed(y_prev);
}

namespace {

Vec residual(const LinearObservation& obs, const GaussianMixture& mix, double sigma,
             const Vec& xbar) {
    if (static_cast<int>(obs.op.cols) != mix.dimension())
        throw std::invalid_argument("operator columns must match field dimension");
    Vec eps = mix.noise_prediction(sigma, xbar);
    Vec x0hat = xbar - sigma * eps;
    return obs.target - obs.op.apply(x0hat);
}

}  // namespace

double observation_potential(const LinearObservation& obs, const GaussianMixture& mix,
                             double sigma, const Vec& xbar) {
    const Vec r = residual(obs, mix, sigma, xbar);
    return dot(r, r) / (2.0 * obs.gamma);
}

Vec observation_potential_gradient(const LinearObservation& obs, const GaussianMixture& mix,
                                   double sigma, const Vec& xbar) {
    const Vec r = residual(obs, mix, sigma, xbar);
    // grad = -(1/gamma) (d x0hat/dx)^T M^T r, with d x0hat/dx = I - sigma * J_eps.
    Vec mt_r = obs.op.apply_transposed(r);
    const Matrix jac = mix.noise_prediction_jacobian(sigma, xbar);
    Vec jt_mt_r = jac.apply_transposed(mt_r);
    Vec g = mt_r - sigma * jt_mt_r;
    return (-1.0 / obs.gamma) * g;
}

GuidancePotential observation_guidance(const LinearObservation& obs, const GaussianMixture& mix,
                                       double cost_us) {
    return GuidancePotential(
        mix.dimension(),
        [obs, mix](double sigma, const Vec& x) {
            return observation_potential(obs, mix, sigma, x);
        },
        [obs, mix](double sigma, const Vec& x) {
            return observation_potential_gradient(obs, mix, sigma, x);
        },
        cost_us);
}

Vec forward_observation_sample(const LinearObservation& obs, const DiffusionField& field,
                               double sigma_from, double sigma_to, const Vec& y0, uint64_t seed) {
    if (!(sigma_from > sigma_to))
        throw std::invalid_argument("sigma_from must exceed sigma_to");
    const double abar_from = alpha_bar_from_sigma(sigma_from);
    const double abar_to = alpha_bar_from_sigma(sigma_to);

    double eta2 = 0.0;
    if (obs.eta_mode == LinearObservation::EtaMode::stochastic)
        eta2 = (1.0 - abar_to) / (1.0 - abar_from) * (1.0 - abar_from / abar_to);

    // Noise direction from the field's prediction at the clean observation,
    // so repeated deterministic calls stay pure functions of the inputs.
    const Vec eps = field(sigma_from, y0);
    const double mean_eps = std::sqrt(std::max(0.0, 1.0 - abar_to - eta2));
    Vec y = std::sqrt(abar_to) * y0;
    axpy(y, mean_eps, eps);
    if (eta2 > 0.0) {
        GaussianRng rng(seed);
        const double eta = std::sqrt(eta2);
        for (double& v : y) v += eta * rng.next();
    }
    return y;
}

}  // namespace splitsolve
