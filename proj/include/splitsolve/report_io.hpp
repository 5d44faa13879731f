#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splitsolve/analysis.hpp"
#include "splitsolve/sampler.hpp"
#include "splitsolve/stability.hpp"

namespace splitsolve {

// scheme,steps,seed,endpoint_error,field_nfe,potential_nfe,wall_time_s,diverged_at
void write_sample_csv(std::ostream& out, const std::vector<SolveReport>& reports);
std::vector<SolveReport> read_sample_csv(std::istream& in);

// method,s,min_stable_N,root1_mod,root2_mod
void write_stability_csv(std::ostream& out, const std::vector<StabilityReport>& rows);
std::vector<StabilityReport> read_stability_csv(std::istream& in);

// scheme,s,steps,endpoint_error,diverged_at
void write_toy_csv(std::ostream& out, const std::vector<ToyStudyRow>& rows);
std::vector<ToyStudyRow> read_toy_csv(std::istream& in);

// Per-trajectory JSON dump (grid, states, NFE counts) for external plotting.
std::string trajectory_json(const Trajectory& traj);

}  // namespace splitsolve
