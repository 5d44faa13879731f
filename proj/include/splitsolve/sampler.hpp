#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitsolve/splitting.hpp"

namespace splitsolve {

/// One sweep cell: a scheme run at a step count from a seeded start,
/// measured against the same-seed reference trajectory.
struct SolveReport {
    std::string scheme;
    int steps = 0;
    uint64_t seed = 0;
    double endpoint_error = 0.0;  // +inf when the run diverged
    long field_nfe = 0;
    long potential_nfe = 0;
    double wall_time_s = 0.0;
    std::optional<int> diverged_at;
};

struct SweepSummary {
    std::string scheme;
    int steps = 0;
    double mean_error = 0.0;
    double stddev_error = 0.0;
    int cells = 0;
    int diverged = 0;
};

struct SamplerOptions {
    double sigma_max = 10.0;
    double sigma_min = 0.01;
    int reference_steps = 1000;
    int jobs = 1;
    bool benchmark = false;  // forces serial execution for timing fidelity
};

// Seeded draw from N(0, sigma_max^2 I).
Vec sample_initial(int dimension, double sigma_max, uint64_t seed);

// Full-grid Euler solve of the guided ODE (kind = none) at the given step
// count; the protocol's definition of a reference solution.
Trajectory reference_solve(const GuidedProblem& problem, double sigma_max, double sigma_min,
                           const Vec& x0, int steps = 1000);

/// Keyed store of reference trajectories so sweeps reuse the same-seed
/// reference across schemes and step counts.
class ReferenceCache {
  public:
    const Trajectory& get(const GuidedProblem& problem, const std::string& problem_tag,
                          double sigma_max, double sigma_min, int steps, uint64_t seed);

  private:
    std::map<std::string, Trajectory> cache_;
};

// Root-mean-square distance between the two final states; +infinity when
// either trajectory diverged.
double endpoint_error(const Trajectory& traj, const Trajectory& reference);

// One report per (scheme, steps, seed) cell, ordered scheme-major then by
// steps then seed. Divergences are recorded in the report, not thrown.
std::vector<SolveReport> sweep(const GuidedProblem& problem, const std::string& problem_tag,
                               const std::vector<SplitScheme>& schemes,
                               const std::vector<int>& step_counts,
                               const std::vector<uint64_t>& seeds, const SamplerOptions& options);

// Mean/stddev of endpoint error per (scheme, steps); diverged cells are
// counted separately and excluded from the moments.
std::vector<SweepSummary> summarize(const std::vector<SolveReport>& reports);

}  // namespace splitsolve
