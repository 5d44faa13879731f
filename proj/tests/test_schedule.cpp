#include <cmath>
#include <random>

#include "doctest.h"
#include "splitsolve/schedule.hpp"

using namespace splitsolve;

TEST_CASE("log-linear schedule hits the affine-in-log grid") {
    const auto sched = SigmaSchedule::log_linear(1.0, std::exp(-3.0), 3);
    REQUIRE(sched.steps() == 3);
    CHECK(sched[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sched[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(sched[2] == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(sched[3] == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
}

TEST_CASE("log-linear endpoints are exact") {
    const auto sched = SigmaSchedule::log_linear(80.0, 0.01, 1);
    REQUIRE(sched.steps() == 1);
    CHECK(sched[0] == 80.0);
    CHECK(sched[1] == 0.01);
}

TEST_CASE("schedule construction rejects bad bounds") {
    CHECK_THROWS_AS(SigmaSchedule::log_linear(5.0, 5.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(SigmaSchedule::log_linear(0.01, 80.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(SigmaSchedule::log_linear(80.0, -1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(SigmaSchedule::log_linear(80.0, 0.01, 0), std::invalid_argument);
    CHECK_THROWS_AS(SigmaSchedule::from_levels({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SigmaSchedule::from_levels({1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SigmaSchedule::from_levels({1.0}), std::invalid_argument);
}

TEST_CASE("constructed schedules are strictly decreasing and log-affine") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> logmax(-1.0, 5.0), span(0.5, 9.0);
    std::uniform_int_distribution<int> steps(1, 200);
    for (int trial = 0; trial < 200; ++trial) {
        const double smax = std::exp(logmax(gen));
        const double smin = smax * std::exp(-span(gen));
        const int n = steps(gen);
        const auto sched = SigmaSchedule::log_linear(smax, smin, n);
        const double la = std::log(smax), lb = std::log(smin);
        for (int i = 0; i <= n; ++i) {
            if (i > 0) CHECK(sched[i] < sched[i - 1]);
            CHECK(sched[i] > 0.0);
            const double expected = la + (static_cast<double>(i) / n) * (lb - la);
            CHECK(std::log(sched[i]) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("sigma <-> alpha-bar conversion") {
    CHECK(sigma_from_alpha_bar(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sigma_from_alpha_bar(0.2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sigma_from_alpha_bar(0.8) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(sigma_from_alpha_bar(0.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma_from_alpha_bar(1.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma_from_alpha_bar(-0.1), std::invalid_argument);

    for (double abar = 1e-6; abar < 1.0 - 1e-6; abar += 0.01) {
        const double roundtrip = alpha_bar_from_sigma(sigma_from_alpha_bar(abar));
        CHECK(std::abs(roundtrip - abar) < 1e-12);
    }
    for (double abar : {1e-6, 1.0 - 1e-6}) {
        const double roundtrip = alpha_bar_from_sigma(sigma_from_alpha_bar(abar));
        CHECK(std::abs(roundtrip - abar) < 1e-12);
    }
}

TEST_CASE("xbar rescaling and its inverse") {
    const Vec x{2.0, 4.0};
    const Vec xb = to_xbar(x, 0.25);
    CHECK(xb[0] == doctest::Approx(4.0));
    CHECK(xb[1] == doctest::Approx(8.0));

    const Vec zero{0.0, 0.0, 0.0};
    const Vec zb = to_xbar(zero, 0.37);
    for (double v : zb) CHECK(v == 0.0);

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coord(-5.0, 5.0), ab(1e-4, 1.0 - 1e-4);
    for (int trial = 0; trial < 100; ++trial) {
        Vec v{coord(gen), coord(gen), coord(gen)};
        const double abar = ab(gen);
        const Vec back = from_xbar(to_xbar(v, abar), abar);
        for (size_t i = 0; i < v.size(); ++i)
            CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(to_xbar(x, 1.5), std::invalid_argument);
}

TEST_CASE("step log ratio is the constant b on log-linear grids") {
    const auto sched = SigmaSchedule::from_levels({1.0, std::exp(-1.0), std::exp(-2.0)});
    CHECK(sched.step_log_ratio(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sched.step_log_ratio(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(sched.step_log_ratio(2), std::out_of_range);
    CHECK_THROWS_AS(sched.step_log_ratio(-1), std::out_of_range);

    // 30 steps across 9.9 log units gives the familiar b = -0.33
    const auto wide = SigmaSchedule::log_linear(80.0, 80.0 * std::exp(-9.9), 30);
    for (int n = 0; n < wide.steps(); ++n)
        CHECK(wide.step_log_ratio(n) == doctest::Approx(-0.33).epsilon(1e-10));
}

TEST_CASE("schedule json round trip") {
    const auto sched = SigmaSchedule::log_linear(10.0, 0.01, 17);
    const auto back = SigmaSchedule::from_json(sched.to_json());
    REQUIRE(back.steps() == sched.steps());
    for (int i = 0; i <= sched.steps(); ++i)
        CHECK(back[i] == doctest::Approx(sched[i]).epsilon(1e-15));
}
