#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "splitsolve/vec.hpp"

namespace splitsolve {

using FieldFn = std::function<Vec(double sigma, const Vec& xbar)>;

/// Evaluable vector field over (sigma, xbar). Evaluation is deterministic;
/// a shared tally counts calls and an optional artificial cost (microseconds
/// of busy wait per call) stands in for expensive network evaluations so
/// NFE-vs-wall-time tradeoffs can be reproduced at desk scale.
class DiffusionField {
  public:
    DiffusionField() = default;
    DiffusionField(int dimension, FieldFn fn, double cost_us = 0.0);

    int dimension() const { return dimension_; }
    Vec operator()(double sigma, const Vec& xbar) const;

    long evaluations() const { return calls_->load(); }
    double cost_us() const { return cost_us_; }
    void set_cost_us(double us) { cost_us_ = us; }

  private:
    int dimension_ = 0;
    FieldFn fn_;
    double cost_us_ = 0.0;
    std::shared_ptr<std::atomic<long>> calls_ = std::make_shared<std::atomic<long>>(0);
};

/// Scalar conditional function f_sigma(xbar) with its analytic gradient.
class GuidancePotential {
  public:
    GuidancePotential() = default;
    GuidancePotential(int dimension, std::function<double(double, const Vec&)> value,
                      FieldFn gradient, double cost_us = 0.0);

    int dimension() const { return dimension_; }
    double value(double sigma, const Vec& xbar) const;
    Vec gradient(double sigma, const Vec& xbar) const;

    long evaluations() const { return calls_->load(); }
    void set_cost_us(double us) { cost_us_ = us; }

  private:
    int dimension_ = 0;
    std::function<double(double, const Vec&)> value_;
    FieldFn gradient_;
    double cost_us_ = 0.0;
    std::shared_ptr<std::atomic<long>> calls_ = std::make_shared<std::atomic<long>>(0);
};

/// Isotropic Gaussian mixture with per-component class labels. Serves as the
/// data distribution whose exact noise predictor and class posterior replace
/// the trained networks of a guided sampler.
struct GaussianMixture {
    std::vector<double> weights;     // K entries, nonnegative, sum to 1
    std::vector<Vec> means;          // K vectors in R^d
    std::vector<double> variances;   // K positive per-component variances
    std::vector<int> labels;         // class index per component

    GaussianMixture(std::vector<double> weights, std::vector<Vec> means,
                    std::vector<double> variances, std::vector<int> labels);

    int dimension() const { return static_cast<int>(means.front().size()); }
    int components() const { return static_cast<int>(weights.size()); }
    bool has_class(int c) const;

    // Bayes-optimal noise prediction -sigma * grad log p_sigma(xbar), where
    // p_sigma is the mixture smoothed by sigma^2 I. Equals
    // (xbar - E[x0 | xbar]) / sigma.
    Vec noise_prediction(double sigma, const Vec& xbar) const;

    // d x d Jacobian of the noise prediction in xbar (used to differentiate
    // through x0-estimates without finite differences).
    Matrix noise_prediction_jacobian(double sigma, const Vec& xbar) const;

    // ln P(class = c | xbar) under the smoothed mixture; <= 0, classes
    // normalize to 1.
    double class_log_posterior(int c, double sigma, const Vec& xbar) const;
    Vec class_log_posterior_gradient(int c, double sigma, const Vec& xbar) const;

  private:
    // log(w_k) + log N(xbar; mu_k, (v_k + sigma^2) I) for every component.
    std::vector<double> component_log_joint(double sigma, const Vec& xbar) const;
};

// mixture noise predictor as a standalone operation
Vec mixture_noise_predictor(const GaussianMixture& mix, double sigma, const Vec& xbar);
double class_log_posterior(const GaussianMixture& mix, int c, double sigma, const Vec& xbar);

// f_sigma(xbar) = sigma/sqrt(sigma^2+1) * ln P(c | xbar), with gradient; the
// sigma prefactor is constant under the xbar gradient.
double conditional_potential(const GaussianMixture& mix, int c, double sigma, const Vec& xbar);
Vec conditional_potential_gradient(const GaussianMixture& mix, int c, double sigma, const Vec& xbar);

// Field/potential adapters feeding the solve loop.
DiffusionField mixture_field(const GaussianMixture& mix, double cost_us = 0.0);
GuidancePotential class_potential(const GaussianMixture& mix, int class_label,
                                  double cost_us = 0.0);

/// Two-dimensional stiff linear testbed dx/dt = E x + s G x with
/// E = [[0,1],[-1,-2]], G = [[0,0],[-1,-1]] and x(0) = (1, 0).
struct ToyLinearField {
    double scale;  // s > 0

    explicit ToyLinearField(double s);

    Vec epsilon_part(const Vec& x) const;   // E x
    Vec guidance_part(const Vec& x) const;  // s * (G x)
    Vec full(const Vec& x) const;           // E x + s G x
};

// Closed-form solution of the testbed:
// x(t) = (1/s) [-1, s+1]^T e^{-(s+1) t} + (1/s) [s+1, -s-1]^T e^{-t}.
Vec toy_exact_solution(double t, double s);

}  // namespace splitsolve
