#include "splitsolve/stability.hpp"

#include <cmath>
#include <stdexcept>

#include "splitsolve/splitting.hpp"

namespace splitsolve {

namespace {

// Moduli of the roots of r^2 - b r - c = 0, complex pair included.
std::pair<double, double> quadratic_root_moduli(double b, double c) {
    const double disc = b * b + 4.0 * c;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        return {std::abs((b + sq) / 2.0), std::abs((b - sq) / 2.0)};
    }
    const double mod = std::hypot(b / 2.0, std::sqrt(-disc) / 2.0);
    return {mod, mod};
}

// Recurrence coefficients y_{n+1} = b y_n + c y_{n-1} for each method with
// step 1/N on y' = -(s+1) y (split as y'=-y, y'=-s y where applicable).
std::pair<double, double> recurrence_coefficients(const std::string& method, double s, int N) {
    const double dt = 1.0 / N;
    if (method == "euler") {
        return {1.0 - dt * (s + 1.0), 0.0};
    }
    if (method == "plms2") {
        const double h = dt * (s + 1.0);
        return {1.0 - 1.5 * h, 0.5 * h};
    }
    if (method == "ltsp2") {
        const double e = 1.0 - s * dt;
        return {e * (1.0 - 1.5 * dt), e * 0.5 * dt};
    }
    if (method == "stsp2") {
        const double half = 1.0 - 0.5 * s * dt;
        const double e = half * half;
        return {e * (1.0 - 1.5 * dt), e * 0.5 * dt};
    }
    throw std::invalid_argument("unknown stability method: '" + method + "'");
}

bool stable_at(const std::string& method, double s, int N) {
    const auto [b, c] = recurrence_coefficients(method, s, N);
    const auto [r1, r2] = quadratic_root_moduli(b, c);
    return r1 < 1.0 && r2 < 1.0;
}

int min_stable(const std::string& method, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("stiffness scale must be positive");
    for (int N = 1; N < 1000000; ++N)
        if (stable_at(method, s, N)) return N;
    throw std::runtime_error("no stable step count found");
}

}  // namespace

int min_stable_steps_euler(double s) { return min_stable("euler", s); }
int min_stable_steps_plms2(double s) { return min_stable("plms2", s); }
int min_stable_steps_ltsp2(double s) { return min_stable("ltsp2", s); }
int min_stable_steps_stsp2(double s) { return min_stable("stsp2", s); }

std::pair<double, double> recurrence_root_moduli(const std::string& method, double s, int N) {
    const auto [b, c] = recurrence_coefficients(method, s, N);
    if (method == "euler") {
        const double m = std::abs(b);
        return {m, m};
    }
    return quadratic_root_moduli(b, c);
}

std::vector<double> default_stiffness_grid() { return {5, 10, 15, 20, 30, 40, 60, 80}; }

std::vector<StabilityReport> stability_table(std::span<const double> s_values) {
    if (s_values.empty()) throw std::invalid_argument("need at least one stiffness value");
    std::vector<StabilityReport> table;
    for (const char* method : {"euler", "plms2", "ltsp2", "stsp2"}) {
        for (double s : s_values) {
            StabilityReport row;
            row.method = method;
            row.s = s;
            row.min_stable_steps = min_stable(method, s);
            const auto [r1, r2] = recurrence_root_moduli(method, s, row.min_stable_steps);
            row.root1_mod = r1;
            row.root2_mod = r2;
            table.push_back(std::move(row));
        }
    }
    return table;
}

std::optional<int> empirical_divergence_scan(const std::string& method, double s, int n_max) {
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");

    SplitScheme scheme;
    if (method == "euler") {
        scheme = SplitScheme::parse("none:euler");
    } else if (method == "plms2") {
        scheme = SplitScheme::parse("none:plms2");
    } else if (method == "ltsp2") {
        scheme = SplitScheme::parse("ltsp:plms2,plms1");
    } else if (method == "stsp2") {
        scheme = SplitScheme::parse("stsp:plms2,plms1");
    } else {
        throw std::invalid_argument("unknown stability method: '" + method + "'");
    }

    const GuidedProblem problem = GuidedProblem::test_equation(s);
    for (int N = 2; N <= n_max; ++N) {
        std::vector<double> grid(N + 1);
        for (int n = 0; n <= N; ++n) grid[n] = static_cast<double>(n) / N;
        const Trajectory traj = solve(problem, grid, scheme, Vec{1.0});
        if (traj.diverged()) continue;
        double peak = 0.0;
        for (const Vec& y : traj.states) peak = std::max(peak, std::abs(y[0]));
        if (peak <= 10.0 && std::abs(traj.endpoint()[0]) < 1.0) return N;
    }
    return std::nullopt;
}

}  // namespace splitsolve
