#include <cmath>

#include "doctest.h"
#include "splitsolve/fields.hpp"
#include "splitsolve/problem_io.hpp"
#include "splitsolve/schedule.hpp"
#include "splitsolve/splitting.hpp"

using namespace splitsolve;

namespace {

std::vector<double> time_grid(int n, double t_end = 1.0) {
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = t_end * static_cast<double>(i) / n;
    return g;
}

}  // namespace

TEST_CASE("scheme grammar and presets") {
    const auto ltsp4 = SplitScheme::parse("ltsp4");
    CHECK(ltsp4.kind == SplitKind::lie_trotter);
    CHECK(ltsp4.diffusion_method.kind == MethodKind::plms);
    CHECK(ltsp4.diffusion_method.order == 4);
    CHECK(ltsp4.condition_method.order == 1);
    CHECK(ltsp4.to_string() == "ltsp4");

    const auto stsp2 = SplitScheme::parse("stsp2");
    CHECK(stsp2.kind == SplitKind::strang);
    CHECK(stsp2.diffusion_method.order == 2);

    const auto none = SplitScheme::parse("none:rk4");
    CHECK(none.kind == SplitKind::none);
    CHECK(none.diffusion_method.kind == MethodKind::rk4);

    const auto custom = SplitScheme::parse("stsp:heun,plms2");
    CHECK(custom.kind == SplitKind::strang);
    CHECK(custom.diffusion_method.kind == MethodKind::heun);
    CHECK(custom.condition_method.order == 2);

    CHECK_THROWS_AS(SplitScheme::parse("ltsp:plms4"), std::invalid_argument);
    CHECK_THROWS_AS(SplitScheme::parse("strang:euler,euler"), std::invalid_argument);
    CHECK_THROWS_AS(SplitScheme::parse("ltsp3"), std::invalid_argument);
}

TEST_CASE("zero condition terms make all scheme kinds agree bitwise") {
    const GaussianMixture mix = standard_mixture();
    GuidedProblem problem = GuidedProblem::unguided(mixture_field(mix));
    const auto sched = SigmaSchedule::log_linear(10.0, 0.1, 12);
    const Vec x0(8, 2.0);

    for (const char* method : {"euler", "heun", "rk4", "plms4"}) {
        const auto none = solve(problem, sched.levels(),
                                SplitScheme::parse(std::string("none:") + method), x0);
        const auto lt = solve(problem, sched.levels(),
                              SplitScheme::parse(std::string("ltsp:") + method + ",plms1"), x0);
        const auto st = solve(problem, sched.levels(),
                              SplitScheme::parse(std::string("stsp:") + method + ",plms1"), x0);
        REQUIRE(!none.diverged());
        for (size_t n = 0; n < none.states.size(); ++n)
            for (int j = 0; j < 8; ++j) {
                CHECK(none.states[n][j] == lt.states[n][j]);
                CHECK(none.states[n][j] == st.states[n][j]);
            }
    }
}

TEST_CASE("first-order condition step is one gradient-descent iteration") {
    // eps = 0, f = lambda |x|^2 / 2: the update multiplies by (1 - dsigma*lambda)
    const double lambda = 0.8;
    const int d = 3;
    DiffusionField zero(d, [d](double, const Vec&) { return Vec(d, 0.0); });
    GuidancePotential quad(
        d, [lambda](double, const Vec& x) { return 0.5 * lambda * dot(x, x); },
        [lambda](double, const Vec& x) { return lambda * x; });
    GuidedProblem problem = GuidedProblem::guided(zero, quad, 1.0);

    const std::vector<double> grid{2.0, 1.5, 1.0};
    const Vec x0{1.0, -2.0, 0.5};
    const auto traj = solve(problem, grid, SplitScheme::parse("ltsp:plms1,plms1"), x0);
    const double m1 = 1.0 - (1.5 - 2.0) * lambda;
    const double m2 = 1.0 - (1.0 - 1.5) * lambda;
    for (int j = 0; j < d; ++j) {
        CHECK(traj.states[1][j] == doctest::Approx(m1 * x0[j]).epsilon(1e-15));
        CHECK(traj.states[2][j] == doctest::Approx(m2 * m1 * x0[j]).epsilon(1e-15));
    }
}

TEST_CASE("strang halves combine to one full gradient step on constant gradients") {
    const int d = 2;
    const Vec g{0.4, -1.0};
    DiffusionField zero(d, [d](double, const Vec&) { return Vec(d, 0.0); });
    GuidancePotential lin(
        d, [g](double, const Vec& x) { return dot(g, x); },
        [g](double, const Vec&) { return g; });
    GuidedProblem problem = GuidedProblem::guided(zero, lin, 1.0);

    const std::vector<double> grid{1.0, 0.25};
    const Vec x0{3.0, 3.0};
    const auto traj = solve(problem, grid, SplitScheme::parse("stsp:plms1,plms1"), x0);
    for (int j = 0; j < d; ++j)
        CHECK(traj.endpoint()[j] == doctest::Approx(x0[j] - (0.25 - 1.0) * g[j]).epsilon(1e-14));
}

TEST_CASE("scalar test split reproduces the combined recurrences") {
    const double s = 7.0;
    const int n_steps = 6;
    const double dt = 1.0 / n_steps;
    const GuidedProblem problem = GuidedProblem::test_equation(s);

    SUBCASE("first-order splitting with [plms2, plms1]") {
        const auto traj = solve(problem, time_grid(n_steps),
                                SplitScheme::parse("ltsp:plms2,plms1"), Vec{1.0});
        // replicate: diffusion multistep over e_k = -y_k, then euler factor
        double y_prev = 1.0;
        double y1 = (1.0 - s * dt) * (1.0 - dt) * 1.0;  // startup: euler on both parts
        CHECK(traj.states[1][0] == doctest::Approx(y1).epsilon(1e-14));
        double y_curr = y1;
        for (int n = 2; n <= n_steps; ++n) {
            const double next =
                (1.0 - s * dt) * ((1.0 - 1.5 * dt) * y_curr + 0.5 * dt * y_prev);
            y_prev = y_curr;
            y_curr = next;
            CHECK(traj.states[n][0] == doctest::Approx(y_curr).epsilon(1e-13));
        }
    }
    SUBCASE("second-order splitting with [plms2, plms1]") {
        const auto traj = solve(problem, time_grid(n_steps),
                                SplitScheme::parse("stsp:plms2,plms1"), Vec{1.0});
        const double half = 1.0 - 0.5 * s * dt;
        const double c2 = half * half;
        double y_prev = 1.0;
        double y_curr = c2 * (1.0 - dt) * 1.0;  // startup
        CHECK(traj.states[1][0] == doctest::Approx(y_curr).epsilon(1e-14));
        for (int n = 2; n <= n_steps; ++n) {
            const double next = c2 * (1.0 - 1.5 * dt) * y_curr + 0.5 * dt * c2 * y_prev;
            y_prev = y_curr;
            y_curr = next;
            CHECK(traj.states[n][0] == doctest::Approx(y_curr).epsilon(1e-13));
        }
    }
}

TEST_CASE("euler on the sigma grid is the abar-space skip-step recurrence") {
    // the change of variables makes the two updates algebraically identical
    const GaussianMixture mix = standard_mixture();
    const GuidedProblem problem = GuidedProblem::unguided(mixture_field(mix));
    const auto sched = SigmaSchedule::log_linear(5.0, 0.05, 20);
    const Vec xbar0(8, 1.5);

    const auto traj = solve(problem, sched.levels(), SplitScheme::parse("none:euler"), xbar0);

    // recurrence in original coordinates:
    // x_next = sqrt(ab_next/ab)*(x - sqrt(1-ab) eps) + sqrt(1-ab_next) eps
    Vec x = from_xbar(xbar0, alpha_bar_from_sigma(sched[0]));
    for (int n = 0; n < sched.steps(); ++n) {
        const double ab = alpha_bar_from_sigma(sched[n]);
        const double ab_next = alpha_bar_from_sigma(sched[n + 1]);
        const Vec eps = mix.noise_prediction(sched[n], to_xbar(x, ab));
        Vec next = x;
        axpy(next, -std::sqrt(1.0 - ab), eps);
        next = std::sqrt(ab_next / ab) * next;
        axpy(next, std::sqrt(1.0 - ab_next), eps);
        x = next;

        const Vec via_ode = from_xbar(traj.states[n + 1], ab_next);
        for (int j = 0; j < 8; ++j)
            CHECK(x[j] == doctest::Approx(via_ode[j]).epsilon(1e-12));
    }
}

TEST_CASE("evaluation accounting per scheme") {
    const GaussianMixture mix = standard_mixture();
    GuidedProblem problem =
        GuidedProblem::guided(mixture_field(mix), class_potential(mix, 1), 1.0);
    const auto sched = SigmaSchedule::log_linear(10.0, 0.1, 9);
    const Vec x0(8, 0.5);

    const auto lt = solve(problem, sched.levels(), SplitScheme::parse("ltsp4"), x0);
    CHECK(lt.field_nfe == 9);
    CHECK(lt.potential_nfe == 9);

    const auto st = solve(problem, sched.levels(), SplitScheme::parse("stsp4"), x0);
    CHECK(st.field_nfe == 9);
    CHECK(st.potential_nfe == 18);

    const auto none_heun = solve(problem, sched.levels(), SplitScheme::parse("none:heun"), x0);
    CHECK(none_heun.field_nfe == 18);

    const auto none_rk4 = solve(problem, sched.levels(), SplitScheme::parse("none:rk4"), x0);
    CHECK(none_rk4.field_nfe == 36);

    const auto lt_rk4 = solve(problem, sched.levels(), SplitScheme::parse("ltsp:rk4,plms1"), x0);
    CHECK(lt_rk4.field_nfe == 36);
    CHECK(lt_rk4.potential_nfe == 9);
}

TEST_CASE("swapping which operator is halved preserves second-order convergence") {
    // strang with the roles exchanged (diffusion halved instead of the
    // condition term) must converge to the same flow at the same order
    const double s = 1.0;
    const GuidedProblem forward = GuidedProblem::toy(s);
    GuidedProblem swapped{forward.condition, forward.diffusion};
    const Vec exact = toy_exact_solution(1.0, s);
    const auto scheme = SplitScheme::parse("stsp:heun,heun");

    auto err_at = [&](const GuidedProblem& p, int n) {
        const auto traj = solve(p, time_grid(n), scheme, Vec{1.0, 0.0});
        return norm(traj.endpoint() - exact);
    };
    for (const GuidedProblem* p : std::initializer_list<const GuidedProblem*>{&forward, &swapped}) {
        const double e40 = err_at(*p, 40);
        const double e320 = err_at(*p, 320);
        const double slope = std::log(e40 / e320) / std::log(320.0 / 40.0);
        CHECK(slope > 1.8);
        CHECK(slope < 2.2);
        CHECK(err_at(*p, 320) < 1e-5);
    }
}

TEST_CASE("stiff runs report divergence instead of propagating") {
    const GuidedProblem problem = GuidedProblem::test_equation(1e5);
    const auto traj = solve(problem, time_grid(300), SplitScheme::parse("none:euler"), Vec{1.0});
    REQUIRE(traj.diverged());
    CHECK(*traj.diverged_at >= 0);
    CHECK(traj.states.size() < traj.grid.size());
    for (const Vec& state : traj.states) CHECK(all_finite(state));
}

TEST_CASE("degenerate grids are rejected") {
    const GuidedProblem problem = GuidedProblem::test_equation(1.0);
    const std::vector<double> single{1.0};
    CHECK_THROWS_AS(solve(problem, single, SplitScheme::parse("none:euler"), Vec{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve(problem, time_grid(4), SplitScheme::parse("none:euler"), Vec{1.0, 2.0}),
                    std::invalid_argument);
}
