#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitsolve/fields.hpp"
#include "splitsolve/solvers.hpp"
#include "splitsolve/vec.hpp"

namespace splitsolve {

enum class SplitKind { none, lie_trotter, strang };

/// Where the condition gradient's sigma argument is pinned inside a step.
/// The sub-flow itself only sees the step width, so this is a detail:
/// step_start freezes every sub-step at sigma_n, nearest_endpoint uses the
/// grid endpoint closest to each half-step.
enum class ConditionSigma { step_start, nearest_endpoint };

struct SplitScheme {
    SplitKind kind = SplitKind::none;
    MethodSpec diffusion_method;
    MethodSpec condition_method;  // ignored when kind == none and no condition term
    ConditionSigma condition_sigma = ConditionSigma::nearest_endpoint;
    std::string label = "none:euler";

    // Grammar: none:<method> | ltsp:<diff>,<cond> | stsp:<diff>,<cond>
    // plus presets ltsp2, ltsp4, stsp2, stsp4 (= [plms{2,4}, plms1]).
    static SplitScheme parse(const std::string& text);
    std::string to_string() const { return label; }
};

/// A right-hand side split into a diffusion term and a condition term,
///   dx/dsigma = diffusion(sigma, x) + condition(sigma, x).
/// For guided sampling the condition term is -scale * grad f; the toy
/// problem and the scalar test equation supply their own pairs.
struct GuidedProblem {
    DiffusionField diffusion;
    DiffusionField condition;

    static GuidedProblem guided(DiffusionField field, GuidancePotential potential,
                                double guidance_scale = 1.0);
    static GuidedProblem unguided(DiffusionField field);
    static GuidedProblem toy(double s);
    // Scalar y' = -(s+1) y split as y' = -y plus y' = -s y.
    static GuidedProblem test_equation(double s);
};

struct Trajectory {
    std::vector<double> grid;
    std::vector<Vec> states;  // grid.size() entries unless diverged
    long field_nfe = 0;
    long potential_nfe = 0;
    double wall_time_s = 0.0;
    std::optional<int> diverged_at;

    const Vec& endpoint() const { return states.back(); }
    bool diverged() const { return diverged_at.has_value(); }
};

/// Per-solve stepper state for the two subproblems. Histories are owned by
/// one solve and never shared.
struct SplitSteppers {
    Stepper diffusion;
    Stepper condition;
    explicit SplitSteppers(const SplitScheme& scheme)
        : diffusion(scheme.diffusion_method), condition(scheme.condition_method) {}
};

// One step of first-order splitting: the diffusion subproblem advances the
// full step, then the condition subproblem advances the full step from the
// diffusion result (one gradient evaluation when the condition method is a
// first-order multistep).
Vec ltsp_step(const FieldFn& diffusion, const FieldFn& condition, double sigma_n,
              double sigma_next, const Vec& x, SplitSteppers& steppers,
              ConditionSigma anchor = ConditionSigma::nearest_endpoint);

// One step of second-order splitting: condition half step, diffusion full
// step, condition half step.
Vec stsp_step(const FieldFn& diffusion, const FieldFn& condition, double sigma_n,
              double sigma_next, const Vec& x, SplitSteppers& steppers,
              ConditionSigma anchor = ConditionSigma::nearest_endpoint);

/// Integrates the problem over the full grid (monotone in either direction;
/// sigma schedules decrease, plain time grids increase). Non-finite states
/// abort with a diverged-at-step report instead of propagating.
Trajectory solve(const GuidedProblem& problem, std::span<const double> grid,
                 const SplitScheme& scheme, const Vec& x0);

}  // namespace splitsolve
