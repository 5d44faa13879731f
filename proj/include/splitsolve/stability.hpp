#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splitsolve {

/// Analytic stability threshold for one method on the scalar test equation
/// y' = -(s+1) y over t in [0,1] with step 1/N: the smallest N whose
/// recurrence roots all lie strictly inside the unit disk (boundary ties
/// count as unstable).
struct StabilityReport {
    std::string method;
    double s = 0.0;
    int min_stable_steps = 0;
    double root1_mod = 0.0;  // root moduli at min_stable_steps
    double root2_mod = 0.0;
};

int min_stable_steps_euler(double s);
int min_stable_steps_plms2(double s);
int min_stable_steps_ltsp2(double s);   // lie-trotter [plms2, plms1]
int min_stable_steps_stsp2(double s);   // strang [plms2, plms1]

// Root moduli of the method's recurrence at a given N (the Euler row reports
// its single multiplier twice).
std::pair<double, double> recurrence_root_moduli(const std::string& method, double s, int N);

// 4 methods x |s_values| grid; defaults to s in {5,10,15,20,30,40,60,80}.
std::vector<StabilityReport> stability_table(std::span<const double> s_values);
std::vector<double> default_stiffness_grid();

// Integrates the test equation with the actual solver machinery (split into
// y'=-y and y'=-s y for the splitting schemes) for N = 2..n_max and returns
// the smallest N whose trajectory stays within 10|y0| and ends below |y0|.
std::optional<int> empirical_divergence_scan(const std::string& method, double s, int n_max);

}  // namespace splitsolve
