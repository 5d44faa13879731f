#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "splitsolve/fields.hpp"
#include "splitsolve/vec.hpp"

namespace splitsolve {

enum class MethodKind { euler, heun, rk4, plms, glms };
enum class GlmsMode { verbatim, corrected };

/// Solver selection. Heun and RK2 are the same method; the order field only
/// matters for the multistep kinds.
struct MethodSpec {
    MethodKind kind = MethodKind::euler;
    int order = 1;                           // 1..4, plms/glms only
    GlmsMode glms_mode = GlmsMode::corrected;

    // Grammar: euler | heun | rk2 | rk4 | plms{1..4} | glms{1..4}:{verbatim|corrected}
    static MethodSpec parse(const std::string& text);
    std::string to_string() const;

    // Field evaluations consumed by one step.
    int evals_per_step() const;
};

/// Ring of the most recent field evaluations, newest first. Owned by one
/// solve; restarting a solve starts from an empty buffer.
class EvalBuffer {
  public:
    explicit EvalBuffer(int max_order = 4);

    void push(Vec e);
    int count() const { return static_cast<int>(entries_.size()); }
    const Vec& operator[](int k) const { return entries_.at(k); }  // k=0 newest
    void clear() { entries_.clear(); }

  private:
    int max_order_;
    std::vector<Vec> entries_;
};

// Single steps over [sigma_n, sigma_next]; decreasing sigma (negative step)
// is the typical direction but any monotone pair is accepted.
Vec euler_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x);
Vec heun_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x);
Vec rk4_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x);

// One multistep update: evaluates the field once at (sigma_n, x), pushes the
// evaluation, and combines with weights of the effective order
// c = min(order, history). The first step is an Euler step.
Vec plms_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x,
              EvalBuffer& buffer, int order);

// Adams-Bashforth-style combination weights for effective order c; rows sum
// to 1 exactly: (1), (3/2,-1/2), (23,-16,5)/12, (55,-59,37,-9)/24.
std::vector<double> plms_coefficients(int order, int available_history);

struct GlmsWeights {
    double first;   // multiplies the first backward difference
    double second;  // second difference
    double third;   // third difference
};

// Correction weights for the log-linear-schedule multistep update, derived
// from integrating Newton basis terms against the per-step sigma measure
// parameterized by b = ln(sigma_{n+1}) - ln(sigma_n) < 0.
//
// Verbatim mode keeps the published order-3/order-4 closed forms, whose
// b->0 limits are (1/2, 5/6, 9/4); corrected mode divides them by 2! and 3!
// so the limits (1/2, 5/12, 3/8) match the plain multistep weights. Near
// b = 0 the closed forms cancel catastrophically and a series expansion is
// used instead.
GlmsWeights glms_coefficients(double b, int order, GlmsMode mode);

// One sigma-aware multistep update; b is taken per step from the sigma pair.
Vec glms_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x,
              EvalBuffer& buffer, int order, GlmsMode mode);

// Independent oracle for the corrected weights: adaptive quadrature of the
// Newton basis polynomials u, u(u+1)/2!, u(u+1)(u+2)/3! against the measure
// e^{u b} * b / (e^b - 1) du on [0, 1].
std::vector<double> quadrature_newton_weights(double b, int order);

/// A method plus its evaluation history; advances one subproblem state.
class Stepper {
  public:
    explicit Stepper(MethodSpec spec) : spec_(spec), buffer_(4) {}

    Vec advance(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x);
    void reset() { buffer_.clear(); }
    const MethodSpec& spec() const { return spec_; }
    EvalBuffer& buffer() { return buffer_; }

  private:
    MethodSpec spec_;
    EvalBuffer buffer_;
};

}  // namespace splitsolve
