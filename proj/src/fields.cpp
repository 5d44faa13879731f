#include "splitsolve/fields.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace splitsolve {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // ln(2*pi)

void busy_wait_us(double us) {
    if (us <= 0.0) return;
    const auto until = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double, std::micro>(us));
    while (std::chrono::steady_clock::now() < until) {
    }
}

double log_sum_exp(const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

DiffusionField::DiffusionField(int dimension, FieldFn fn, double cost_us)
    : dimension_(dimension), fn_(std::move(fn)), cost_us_(cost_us) {
    if (dimension_ < 1) throw std::invalid_argument("field dimension must be positive");
}

Vec DiffusionField::operator()(double sigma, const Vec& xbar) const {
    calls_->fetch_add(1, std::memory_order_relaxed);
    busy_wait_us(cost_us_);
    return fn_(sigma, xbar);
}

GuidancePotential::GuidancePotential(int dimension, std::function<double(double, const Vec&)> value,
                                     FieldFn gradient, double cost_us)
    : dimension_(dimension), value_(std::move(value)), gradient_(std::move(gradient)),
      cost_us_(cost_us) {
    if (dimension_ < 1) throw std::invalid_argument("potential dimension must be positive");
}

double GuidancePotential::value(double sigma, const Vec& xbar) const {
    return value_(sigma, xbar);
}

Vec GuidancePotential::gradient(double sigma, const Vec& xbar) const {
    calls_->fetch_add(1, std::memory_order_relaxed);
    busy_wait_us(cost_us_);
    return gradient_(sigma, xbar);
}

GaussianMixture::GaussianMixture(std::vector<double> w, std::vector<Vec> m,
                                 std::vector<double> v, std::vector<int> l)
    : weights(std::move(w)), means(std::move(m)), variances(std::move(v)), labels(std::move(l)) {
    const size_t k = weights.size();
    if (k == 0) throw std::invalid_argument("mixture needs at least one component");
    if (means.size() != k || variances.size() != k || labels.size() != k)
        throw std::invalid_argument("mixture fields must have matching lengths");
    const size_t d = means.front().size();
    if (d == 0) throw std::invalid_argument("mixture dimension must be positive");
    double total = 0.0;
    for (size_t i = 0; i < k; ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
        // v = 0 (point mass) is allowed; sigma > 0 keeps the smoothed density proper
        if (variances[i] < 0.0) throw std::invalid_argument("mixture variances must be nonnegative");
        if (means[i].size() != d) throw std::invalid_argument("mixture means must share a dimension");
        total += weights[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("mixture weights must sum to 1");
}

bool GaussianMixture::has_class(int c) const {
    return std::find(labels.begin(), labels.end(), c) != labels.end();
}

std::vector<double> GaussianMixture::component_log_joint(double sigma, const Vec& xbar) const {
    const int k = components();
    const int d = dimension();
    std::vector<double> lj(k);
    for (int i = 0; i < k; ++i) {
        const double s2 = variances[i] + sigma * sigma;
        double q = 0.0;
        for (int j = 0; j < d; ++j) {
            const double diff = xbar[j] - means[i][j];
            q += diff * diff;
        }
        lj[i] = std::log(weights[i]) - 0.5 * q / s2 - 0.5 * d * (kLog2Pi + std::log(s2));
    }
    return lj;
}

Vec GaussianMixture::noise_prediction(double sigma, const Vec& xbar) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (static_cast<int>(xbar.size()) != dimension())
        throw std::invalid_argument("state dimension mismatch");

    const auto lj = component_log_joint(sigma, xbar);
    const double lz = log_sum_exp(lj);
    const int d = dimension();
    Vec out(d, 0.0);
    for (int i = 0; i < components(); ++i) {
        const double r = std::exp(lj[i] - lz);
        const double s2 = variances[i] + sigma * sigma;
        for (int j = 0; j < d; ++j) out[j] += r * (xbar[j] - means[i][j]) / s2;
    }
    for (int j = 0; j < d; ++j) out[j] *= sigma;
    return out;
}

Matrix GaussianMixture::noise_prediction_jacobian(double sigma, const Vec& xbar) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const int d = dimension();
    const int k = components();
    const auto lj = component_log_joint(sigma, xbar);
    const double lz = log_sum_exp(lj);

    std::vector<double> resp(k);
    std::vector<Vec> comp_score(k, Vec(d));  // grad log N_i = (mu_i - x)/s2_i
    Vec mean_score(d, 0.0);
    for (int i = 0; i < k; ++i) {
        resp[i] = std::exp(lj[i] - lz);
        const double s2 = variances[i] + sigma * sigma;
        for (int j = 0; j < d; ++j) {
            comp_score[i][j] = (means[i][j] - xbar[j]) / s2;
            mean_score[j] += resp[i] * comp_score[i][j];
        }
    }

    // d eps / d x = sigma * [ sum_i r_i/s2_i I  +  sum_i (x-mu_i)/s2_i (dr_i/dx)^T ],
    // with dr_i/dx = r_i (score_i - mean_score).
    Matrix jac(d, d);
    double diag = 0.0;
    for (int i = 0; i < k; ++i) diag += resp[i] / (variances[i] + sigma * sigma);
    for (int j = 0; j < d; ++j) jac(j, j) = diag;
    for (int i = 0; i < k; ++i) {
        const double s2 = variances[i] + sigma * sigma;
        for (int a = 0; a < d; ++a) {
            const double lhs = (xbar[a] - means[i][a]) / s2;
            for (int b = 0; b < d; ++b)
                jac(a, b) += lhs * resp[i] * (comp_score[i][b] - mean_score[b]);
        }
    }
    for (double& v : jac.data) v *= sigma;
    return jac;
}

double GaussianMixture::class_log_posterior(int c, double sigma, const Vec& xbar) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!has_class(c)) throw std::invalid_argument("unknown class label " + std::to_string(c));

    const auto lj = component_log_joint(sigma, xbar);
    std::vector<double> in_class;
    for (int i = 0; i < components(); ++i)
        if (labels[i] == c) in_class.push_back(lj[i]);
    return log_sum_exp(in_class) - log_sum_exp(lj);
}

Vec GaussianMixture::class_log_posterior_gradient(int c, double sigma, const Vec& xbar) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!has_class(c)) throw std::invalid_argument("unknown class label " + std::to_string(c));

    const int d = dimension();
    const int k = components();
    const auto lj = component_log_joint(sigma, xbar);
    const double lz = log_sum_exp(lj);
    std::vector<double> in_class;
    for (int i = 0; i < k; ++i)
        if (labels[i] == c) in_class.push_back(lj[i]);
    const double lzc = log_sum_exp(in_class);

    // grad ln P(c|x) = sum_{i in c} rho_i score_i - sum_i r_i score_i,
    // rho_i the within-class responsibilities.
    Vec g(d, 0.0);
    for (int i = 0; i < k; ++i) {
        const double s2 = variances[i] + sigma * sigma;
        const double r = std::exp(lj[i] - lz);
        const double rho = (labels[i] == c) ? std::exp(lj[i] - lzc) : 0.0;
        const double coef = rho - r;
        for (int j = 0; j < d; ++j) g[j] += coef * (means[i][j] - xbar[j]) / s2;
    }
    return g;
}

Vec mixture_noise_predictor(const GaussianMixture& mix, double sigma, const Vec& xbar) {
    return mix.noise_prediction(sigma, xbar);
}

double class_log_posterior(const GaussianMixture& mix, int c, double sigma, const Vec& xbar) {
    return mix.class_log_posterior(c, sigma, xbar);
}

double conditional_potential(const GaussianMixture& mix, int c, double sigma, const Vec& xbar) {
    const double pref = sigma / std::sqrt(sigma * sigma + 1.0);
    return pref * mix.class_log_posterior(c, sigma, xbar);
}

Vec conditional_potential_gradient(const GaussianMixture& mix, int c, double sigma,
                                   const Vec& xbar) {
    const double pref = sigma / std::sqrt(sigma * sigma + 1.0);
    return pref * mix.class_log_posterior_gradient(c, sigma, xbar);
}

DiffusionField mixture_field(const GaussianMixture& mix, double cost_us) {
    return DiffusionField(
        mix.dimension(),
        [mix](double sigma, const Vec& x) { return mix.noise_prediction(sigma, x); }, cost_us);
}

GuidancePotential class_potential(const GaussianMixture& mix, int class_label, double cost_us) {
    if (!mix.has_class(class_label))
        throw std::invalid_argument("unknown class label " + std::to_string(class_label));
    return GuidancePotential(
        mix.dimension(),
        [mix, class_label](double sigma, const Vec& x) {
            return conditional_potential(mix, class_label, sigma, x);
        },
        [mix, class_label](double sigma, const Vec& x) {
            return conditional_potential_gradient(mix, class_label, sigma, x);
        },
        cost_us);
}

ToyLinearField::ToyLinearField(double s) : scale(s) {
    if (!(s > 0.0)) throw std::invalid_argument("toy scale must be positive");
}

Vec ToyLinearField::epsilon_part(const Vec& x) const {
    return {x[1], -x[0] - 2.0 * x[1]};
}

Vec ToyLinearField::guidance_part(const Vec& x) const {
    return {0.0, scale * (-x[0] - x[1])};
}

Vec ToyLinearField::full(const Vec& x) const {
    return epsilon_part(x) + guidance_part(x);
}

Vec toy_exact_solution(double t, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("toy scale must be positive");
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    const double fast = std::exp(-(s + 1.0) * t);
    const double slow = std::exp(-t);
    return {(-fast + (s + 1.0) * slow) / s, ((s + 1.0) * fast - (s + 1.0) * slow) / s};
}

}  // namespace splitsolve
