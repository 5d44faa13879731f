#include "splitsolve/sampler.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "splitsolve/rng.hpp"
#include "splitsolve/schedule.hpp"

namespace splitsolve {

Vec sample_initial(int dimension, double sigma_max, uint64_t seed) {
    if (dimension < 1) throw std::invalid_argument("dimension must be positive");
    if (!(sigma_max > 0.0)) throw std::invalid_argument("sigma_max must be positive");
    GaussianRng rng(seed);
    Vec x = rng.vector(dimension);
    for (double& v : x) v *= sigma_max;
    return x;
}

Trajectory reference_solve(const GuidedProblem& problem, double sigma_max, double sigma_min,
                           const Vec& x0, int steps) {
    const auto schedule = SigmaSchedule::log_linear(sigma_max, sigma_min, steps);
    const SplitScheme euler = SplitScheme::parse("none:euler");
    return solve(problem, schedule.levels(), euler, x0);
}

const Trajectory& ReferenceCache::get(const GuidedProblem& problem, const std::string& tag,
                                      double sigma_max, double sigma_min, int steps,
                                      uint64_t seed) {
    std::ostringstream key;
    key << tag << '|' << sigma_max << '|' << sigma_min << '|' << steps << '|' << seed;
    auto it = cache_.find(key.str());
    if (it != cache_.end()) return it->second;
    const Vec x0 = sample_initial(problem.diffusion.dimension(), sigma_max, seed);
    auto [ins, _] = cache_.emplace(key.str(),
                                   reference_solve(problem, sigma_max, sigma_min, x0, steps));
    return ins->second;
}

double endpoint_error(const Trajectory& traj, const Trajectory& reference) {
    if (traj.diverged() || reference.diverged())
        return std::numeric_limits<double>::infinity();
    const Vec& a = traj.endpoint();
    const Vec& b = reference.endpoint();
    if (a.size() != b.size()) throw std::invalid_argument("trajectory dimensions differ");
    return norm(a - b) / std::sqrt(static_cast<double>(a.size()));
}

namespace {

struct Cell {
    const SplitScheme* scheme;
    int steps;
    uint64_t seed;
};

SolveReport run_cell(const GuidedProblem& problem, const Cell& cell, const Trajectory& reference,
                     const SamplerOptions& options) {
    const auto schedule =
        SigmaSchedule::log_linear(options.sigma_max, options.sigma_min, cell.steps);
    const Vec x0 = sample_initial(problem.diffusion.dimension(), options.sigma_max, cell.seed);
    const Trajectory traj = solve(problem, schedule.levels(), *cell.scheme, x0);

    SolveReport report;
    report.scheme = cell.scheme->to_string();
    report.steps = cell.steps;
    report.seed = cell.seed;
    report.endpoint_error = endpoint_error(traj, reference);
    report.field_nfe = traj.field_nfe;
    report.potential_nfe = traj.potential_nfe;
    report.wall_time_s = traj.wall_time_s;
    report.diverged_at = traj.diverged_at;
    return report;
}

}  // namespace

std::vector<SolveReport> sweep(const GuidedProblem& problem, const std::string& problem_tag,
                               const std::vector<SplitScheme>& schemes,
                               const std::vector<int>& step_counts,
                               const std::vector<uint64_t>& seeds,
                               const SamplerOptions& options) {
    if (schemes.empty() || step_counts.empty() || seeds.empty())
        throw std::invalid_argument("sweep needs nonempty schemes, step counts, and seeds");

    ReferenceCache cache;
    for (uint64_t seed : seeds)
        cache.get(problem, problem_tag, options.sigma_max, options.sigma_min,
                  options.reference_steps, seed);

    std::vector<Cell> cells;
    for (const auto& scheme : schemes)
        for (int steps : step_counts)
            for (uint64_t seed : seeds) cells.push_back({&scheme, steps, seed});

    std::vector<SolveReport> reports(cells.size());
    const int jobs = options.benchmark ? 1 : std::max(1, options.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < cells.size(); ++i) {
            const Trajectory& ref =
                cache.get(problem, problem_tag, options.sigma_max, options.sigma_min,
                          options.reference_steps, cells[i].seed);
            reports[i] = run_cell(problem, cells[i], ref, options);
        }
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                // cache is fully populated above; lookups are read-only here
                const Trajectory& ref =
                    cache.get(problem, problem_tag, options.sigma_max, options.sigma_min,
                              options.reference_steps, cells[i].seed);
                reports[i] = run_cell(problem, cells[i], ref, options);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return reports;
}

std::vector<SweepSummary> summarize(const std::vector<SolveReport>& reports) {
    std::map<std::pair<std::string, int>, std::vector<const SolveReport*>> groups;
    for (const auto& r : reports) groups[{r.scheme, r.steps}].push_back(&r);

    std::vector<SweepSummary> out;
    for (const auto& [key, rows] : groups) {
        SweepSummary s;
        s.scheme = key.first;
        s.steps = key.second;
        s.cells = static_cast<int>(rows.size());
        double sum = 0.0;
        int finite = 0;
        for (const auto* r : rows) {
            if (r->diverged_at.has_value() || std::isinf(r->endpoint_error)) {
                ++s.diverged;
                continue;
            }
            sum += r->endpoint_error;
            ++finite;
        }
        if (finite > 0) {
            s.mean_error = sum / finite;
            double ss = 0.0;
            for (const auto* r : rows) {
                if (r->diverged_at.has_value() || std::isinf(r->endpoint_error)) continue;
                const double d = r->endpoint_error - s.mean_error;
                ss += d * d;
            }
            s.stddev_error = std::sqrt(ss / finite);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace splitsolve
