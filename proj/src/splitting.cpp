#include "splitsolve/splitting.hpp"

#include <chrono>
#include <stdexcept>

namespace splitsolve {

namespace {

std::pair<std::string, std::string> split_pair(const std::string& body) {
    const auto comma = body.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("split scheme needs '<diffusion>,<condition>' methods");
    return {body.substr(0, comma), body.substr(comma + 1)};
}

}  // namespace

SplitScheme SplitScheme::parse(const std::string& text) {
    SplitScheme s;
    s.label = text;
    if (text == "ltsp2" || text == "ltsp4" || text == "stsp2" || text == "stsp4") {
        s.kind = (text[0] == 'l') ? SplitKind::lie_trotter : SplitKind::strang;
        s.diffusion_method = MethodSpec::parse(std::string("plms") + text.back());
        s.condition_method = MethodSpec::parse("plms1");
        return s;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("unrecognized scheme: '" + text + "'");
    const std::string head = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (head == "none") {
        s.kind = SplitKind::none;
        s.diffusion_method = MethodSpec::parse(body);
        s.condition_method = MethodSpec::parse("plms1");
        return s;
    }
    if (head == "ltsp" || head == "stsp") {
        s.kind = (head == "ltsp") ? SplitKind::lie_trotter : SplitKind::strang;
        const auto [d, c] = split_pair(body);
        s.diffusion_method = MethodSpec::parse(d);
        s.condition_method = MethodSpec::parse(c);
        return s;
    }
    throw std::invalid_argument("unrecognized scheme: '" + text + "'");
}

GuidedProblem GuidedProblem::guided(DiffusionField field, GuidancePotential potential,
                                    double guidance_scale) {
    if (field.dimension() != potential.dimension())
        throw std::invalid_argument("field and potential dimensions differ");
    DiffusionField condition(
        field.dimension(),
        [potential, guidance_scale](double sigma, const Vec& x) {
            return (-guidance_scale) * potential.gradient(sigma, x);
        });
    return GuidedProblem{std::move(field), std::move(condition)};
}

GuidedProblem GuidedProblem::unguided(DiffusionField field) {
    const int d = field.dimension();
    DiffusionField zero(d, [d](double, const Vec&) { return Vec(d, 0.0); });
    return GuidedProblem{std::move(field), std::move(zero)};
}

GuidedProblem GuidedProblem::toy(double s) {
    ToyLinearField toy(s);
    DiffusionField eps(2, [toy](double, const Vec& x) { return toy.epsilon_part(x); });
    DiffusionField gui(2, [toy](double, const Vec& x) { return toy.guidance_part(x); });
    return GuidedProblem{std::move(eps), std::move(gui)};
}

GuidedProblem GuidedProblem::test_equation(double s) {
    DiffusionField slow(1, [](double, const Vec& y) { return Vec{-y[0]}; });
    DiffusionField fast(1, [s](double, const Vec& y) { return Vec{-s * y[0]}; });
    return GuidedProblem{std::move(slow), std::move(fast)};
}

namespace {

FieldFn frozen_sigma(const FieldFn& f, double sigma) {
    return [&f, sigma](double, const Vec& x) { return f(sigma, x); };
}

}  // namespace

Vec ltsp_step(const FieldFn& diffusion, const FieldFn& condition, double sigma_n,
              double sigma_next, const Vec& x, SplitSteppers& steppers, ConditionSigma anchor) {
    (void)anchor;  // the single condition sub-step always anchors at sigma_n
    Vec y = steppers.diffusion.advance(diffusion, sigma_n, sigma_next, x);
    const FieldFn frozen = frozen_sigma(condition, sigma_n);
    return steppers.condition.advance(frozen, sigma_n, sigma_next, y);
}

Vec stsp_step(const FieldFn& diffusion, const FieldFn& condition, double sigma_n,
              double sigma_next, const Vec& x, SplitSteppers& steppers, ConditionSigma anchor) {
    const double sigma_mid = 0.5 * (sigma_n + sigma_next);
    const double first = sigma_n;
    const double second = (anchor == ConditionSigma::nearest_endpoint) ? sigma_next : sigma_n;

    const FieldFn frozen_first = frozen_sigma(condition, first);
    Vec z = steppers.condition.advance(frozen_first, sigma_n, sigma_mid, x);
    Vec y = steppers.diffusion.advance(diffusion, sigma_n, sigma_next, z);
    const FieldFn frozen_second = frozen_sigma(condition, second);
    return steppers.condition.advance(frozen_second, sigma_mid, sigma_next, y);
}

Trajectory solve(const GuidedProblem& problem, std::span<const double> grid,
                 const SplitScheme& scheme, const Vec& x0) {
    if (grid.size() < 2) throw std::invalid_argument("grid needs at least two levels");
    if (static_cast<int>(x0.size()) != problem.diffusion.dimension())
        throw std::invalid_argument("initial state dimension mismatch");

    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.states.reserve(grid.size());
    traj.states.push_back(x0);

    const FieldFn diffusion = [&](double s, const Vec& x) {
        ++traj.field_nfe;
        return problem.diffusion(s, x);
    };
    const FieldFn condition = [&](double s, const Vec& x) {
        ++traj.potential_nfe;
        return problem.condition(s, x);
    };
    const FieldFn summed = [&](double s, const Vec& x) {
        ++traj.field_nfe;
        ++traj.potential_nfe;
        return problem.diffusion(s, x) + problem.condition(s, x);
    };

    SplitSteppers steppers(scheme);
    Vec x = x0;

    const auto start = std::chrono::steady_clock::now();
    for (size_t n = 0; n + 1 < grid.size(); ++n) {
        switch (scheme.kind) {
            case SplitKind::none:
                x = steppers.diffusion.advance(summed, grid[n], grid[n + 1], x);
                break;
            case SplitKind::lie_trotter:
                x = ltsp_step(diffusion, condition, grid[n], grid[n + 1], x, steppers,
                              scheme.condition_sigma);
                break;
            case SplitKind::strang:
                x = stsp_step(diffusion, condition, grid[n], grid[n + 1], x, steppers,
                              scheme.condition_sigma);
                break;
        }
        if (!all_finite(x)) {
            traj.diverged_at = static_cast<int>(n);
            break;
        }
        traj.states.push_back(x);
    }
    traj.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return traj;
}

}  // namespace splitsolve
