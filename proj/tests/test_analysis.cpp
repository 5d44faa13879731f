#include <cmath>

#include "doctest.h"
#include "splitsolve/analysis.hpp"

using namespace splitsolve;

namespace {
const std::vector<int> kStepGrid{40, 80, 160, 320};
}

TEST_CASE("single-method orders on the smooth testbed") {
    const auto problem = toy_order_problem(1.0);

    const auto euler = estimate_order(problem, SplitScheme::parse("none:euler"), kStepGrid);
    CHECK(euler.slope == doctest::Approx(1.0).epsilon(0.2));

    const auto heun = estimate_order(problem, SplitScheme::parse("none:heun"), kStepGrid);
    CHECK(heun.slope == doctest::Approx(2.0).epsilon(0.1));

    const auto rk4 = estimate_order(problem, SplitScheme::parse("none:rk4"), kStepGrid);
    CHECK(rk4.slope == doctest::Approx(4.0).epsilon(0.125));
    CHECK(rk4.fit_residual < 0.1);
}

TEST_CASE("splitting orders with accurate sub-methods") {
    const auto problem = toy_order_problem(1.0);

    const auto lt = estimate_order(problem, SplitScheme::parse("ltsp:rk4,rk4"), kStepGrid);
    CHECK(lt.slope == doctest::Approx(1.0).epsilon(0.2));

    const auto st = estimate_order(problem, SplitScheme::parse("stsp:rk4,rk4"), kStepGrid);
    CHECK(st.slope == doctest::Approx(2.0).epsilon(0.1));

    const auto st_heun = estimate_order(problem, SplitScheme::parse("stsp:heun,heun"), kStepGrid);
    CHECK(st_heun.slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("first-order sub-steps cap the split order at one") {
    // the half-step composition only reaches its design order when the
    // sub-integrations are at least second-order accurate
    const auto problem = toy_order_problem(1.0);
    const auto st = estimate_order(problem, SplitScheme::parse("stsp:euler,euler"), kStepGrid);
    CHECK(st.slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("order estimates survive rescaling the interval") {
    const auto half = toy_order_problem(1.0, 0.5);
    const auto one = toy_order_problem(1.0, 1.0);
    const auto two = toy_order_problem(1.0, 2.0);
    const auto scheme = SplitScheme::parse("none:euler");
    const double s_half = estimate_order(half, scheme, kStepGrid).slope;
    const double s_one = estimate_order(one, scheme, kStepGrid).slope;
    const double s_two = estimate_order(two, scheme, kStepGrid).slope;
    CHECK(std::abs(s_half - s_one) < 0.1);
    CHECK(std::abs(s_two - s_one) < 0.1);
}

TEST_CASE("gaussian-flow testbed drives the sigma-grid path") {
    const auto problem =
        gaussian_flow_order_problem(Vec{0.0, 0.0}, 1.0, 10.0, 0.05, Vec{3.0, -2.0});
    const auto euler = estimate_order(problem, SplitScheme::parse("none:euler"), kStepGrid);
    CHECK(euler.slope == doctest::Approx(1.0).epsilon(0.2));
    const auto heun = estimate_order(problem, SplitScheme::parse("none:heun"), kStepGrid);
    CHECK(heun.slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("estimate guards its inputs") {
    const auto problem = toy_order_problem(1.0);
    const auto scheme = SplitScheme::parse("none:euler");
    CHECK_THROWS_AS(estimate_order(problem, scheme, {40, 80, 160}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_order(problem, scheme, {80, 40, 160, 320}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_order(problem, scheme, {40, 80, 160, 200}), std::invalid_argument);

    // a diverging configuration invalidates the estimate
    const auto stiff = toy_order_problem(1e12);
    CHECK_THROWS_AS(estimate_order(stiff, SplitScheme::parse("none:plms4"), {4, 8, 16, 32}),
                    std::runtime_error);
}

TEST_CASE("stiff testbed error table") {
    const std::vector<SplitScheme> schemes{
        SplitScheme::parse("none:euler"), SplitScheme::parse("none:plms4"),
        SplitScheme::parse("ltsp4"), SplitScheme::parse("stsp4")};

    SUBCASE("splitting beats the non-split fourth-order method when stiff") {
        const auto rows = toy_error_study(schemes, {5.0}, {10});
        double plms4_err = 0.0, stsp4_err = 0.0;
        for (const auto& r : rows) {
            if (r.scheme == "none:plms4") plms4_err = r.endpoint_error;
            if (r.scheme == "stsp4") stsp4_err = r.endpoint_error;
        }
        CHECK(plms4_err > stsp4_err);
    }
    SUBCASE("moderate stiffness converges at twenty steps") {
        const auto rows = toy_error_study({SplitScheme::parse("none:euler"),
                                           SplitScheme::parse("ltsp4"),
                                           SplitScheme::parse("stsp4")},
                                          {3.0}, {20});
        for (const auto& r : rows) CHECK(r.endpoint_error < 0.05);
    }
    SUBCASE("fine grids push every method below 1e-3") {
        const auto rows = toy_error_study(schemes, {5.0}, {1000});
        for (const auto& r : rows) {
            CHECK(!r.diverged_at.has_value());
            CHECK(r.endpoint_error < 1e-3);
        }
    }
    SUBCASE("stiffer problems never help the non-split fourth-order method") {
        for (int n : {30, 40}) {
            const auto rows =
                toy_error_study({SplitScheme::parse("none:plms4")}, {3.0, 5.0, 10.0}, {n});
            REQUIRE(rows.size() == 3);
            CHECK(rows[0].endpoint_error <= rows[1].endpoint_error);
            CHECK(rows[1].endpoint_error <= rows[2].endpoint_error);
        }
    }
    SUBCASE("divergences are recorded per cell") {
        const auto rows = toy_error_study({SplitScheme::parse("none:plms4")}, {1e40}, {8});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].diverged_at.has_value());
        CHECK(std::isinf(rows[0].endpoint_error));
    }
}
