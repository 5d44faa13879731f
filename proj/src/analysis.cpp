#include "splitsolve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "splitsolve/fields.hpp"
#include "splitsolve/schedule.hpp"

namespace splitsolve {

ExactProblem toy_order_problem(double s, double t_end) {
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    ExactProblem p;
    std::ostringstream label;
    label << "toy(s=" << s << ")";
    p.label = label.str();
    p.fields = GuidedProblem::toy(s);
    p.grid = [t_end](int n) {
        std::vector<double> g(n + 1);
        for (int i = 0; i <= n; ++i) g[i] = t_end * static_cast<double>(i) / n;
        return g;
    };
    p.initial = {1.0, 0.0};
    p.exact_endpoint = toy_exact_solution(t_end, s);
    return p;
}

ExactProblem gaussian_flow_order_problem(const Vec& mean, double variance, double sigma_max,
                                         double sigma_min, const Vec& x0) {
    if (!(variance > 0.0)) throw std::invalid_argument("variance must be positive");
    GaussianMixture single({1.0}, {mean}, {variance}, {0});

    ExactProblem p;
    p.label = "gaussian-flow";
    p.fields = GuidedProblem::unguided(mixture_field(single));
    p.grid = [sigma_max, sigma_min](int n) {
        const auto sched = SigmaSchedule::log_linear(sigma_max, sigma_min, n);
        return std::vector<double>(sched.levels().begin(), sched.levels().end());
    };
    p.initial = x0;
    const double shrink =
        std::sqrt((variance + sigma_min * sigma_min) / (variance + sigma_max * sigma_max));
    Vec end = mean;
    for (size_t i = 0; i < end.size(); ++i) end[i] += shrink * (x0[i] - mean[i]);
    p.exact_endpoint = std::move(end);
    return p;
}

OrderEstimate estimate_order(const ExactProblem& problem, const SplitScheme& scheme,
                             std::vector<int> step_counts) {
    if (step_counts.size() < 4)
        throw std::invalid_argument("order estimation needs at least 4 step counts");
    if (!std::is_sorted(step_counts.begin(), step_counts.end()))
        throw std::invalid_argument("step counts must be ascending");
    if (step_counts.back() < 8 * step_counts.front())
        throw std::invalid_argument("step counts must span at least a factor of 8");

    OrderEstimate est;
    est.scheme = scheme.to_string();
    est.step_counts = step_counts;
    for (int n : step_counts) {
        const auto grid = problem.grid(n);
        const Trajectory traj = solve(problem.fields, grid, scheme, problem.initial);
        if (traj.diverged()) {
            std::ostringstream msg;
            msg << "order estimate invalid: " << scheme.to_string() << " diverged at step "
                << *traj.diverged_at << " of " << n << " on " << problem.label;
            throw std::runtime_error(msg.str());
        }
        est.errors.push_back(norm(traj.endpoint() - problem.exact_endpoint));
    }

    // least squares of log(err) on log(1/N), skipping roundoff-floor cells
    std::vector<double> xs, ys;
    for (size_t i = 0; i < step_counts.size(); ++i) {
        if (est.errors[i] < 1e-12) continue;
        xs.push_back(std::log(1.0 / step_counts[i]));
        ys.push_back(std::log(est.errors[i]));
    }
    if (xs.size() < 2)
        throw std::runtime_error("order estimate invalid: errors at roundoff floor");
    const size_t m = xs.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    est.slope = sxy / sxx;
    const double intercept = my - est.slope * mx;
    double rss = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (intercept + est.slope * xs[i]);
        rss += r * r;
    }
    est.fit_residual = std::sqrt(rss / m);
    return est;
}

Trajectory toy_trajectory(const SplitScheme& scheme, double s, int steps) {
    const auto problem = toy_order_problem(s);
    return solve(problem.fields, problem.grid(steps), scheme, problem.initial);
}

std::vector<ToyStudyRow> toy_error_study(const std::vector<SplitScheme>& schemes,
                                         const std::vector<double>& s_values,
                                         const std::vector<int>& step_counts) {
    if (schemes.empty() || s_values.empty() || step_counts.empty())
        throw std::invalid_argument("toy study needs nonempty schemes, s values, and step counts");
    std::vector<ToyStudyRow> rows;
    for (const auto& scheme : schemes) {
        for (double s : s_values) {
            const Vec exact = toy_exact_solution(1.0, s);
            for (int n : step_counts) {
                const Trajectory traj = toy_trajectory(scheme, s, n);
                ToyStudyRow row;
                row.scheme = scheme.to_string();
                row.s = s;
                row.steps = n;
                row.diverged_at = traj.diverged_at;
                row.endpoint_error = traj.diverged()
                                         ? std::numeric_limits<double>::infinity()
                                         : norm(traj.endpoint() - exact);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

}  // namespace splitsolve
