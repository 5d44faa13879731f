#include "splitsolve/solvers.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace splitsolve {

namespace {

void require_finite(const Vec& x, const char* what) {
    if (!all_finite(x)) throw std::domain_error(std::string("non-finite state passed to ") + what);
}

}  // namespace

MethodSpec MethodSpec::parse(const std::string& text) {
    MethodSpec spec;
    if (text == "euler" || text == "plms1") {
        spec.kind = (text == "plms1") ? MethodKind::plms : MethodKind::euler;
        spec.order = 1;
        return spec;
    }
    if (text == "heun" || text == "rk2") {
        spec.kind = MethodKind::heun;
        spec.order = 2;
        return spec;
    }
    if (text == "rk4") {
        spec.kind = MethodKind::rk4;
        spec.order = 4;
        return spec;
    }
    if (text.rfind("plms", 0) == 0 && text.size() == 5 && text[4] >= '1' && text[4] <= '4') {
        spec.kind = MethodKind::plms;
        spec.order = text[4] - '0';
        return spec;
    }
    if (text.rfind("glms", 0) == 0) {
        const auto colon = text.find(':');
        const std::string head = text.substr(0, colon);
        if (head.size() == 5 && head[4] >= '1' && head[4] <= '4') {
            spec.kind = MethodKind::glms;
            spec.order = head[4] - '0';
            if (colon == std::string::npos) {
                spec.glms_mode = GlmsMode::corrected;
                return spec;
            }
            const std::string mode = text.substr(colon + 1);
            if (mode == "verbatim") {
                spec.glms_mode = GlmsMode::verbatim;
                return spec;
            }
            if (mode == "corrected") {
                spec.glms_mode = GlmsMode::corrected;
                return spec;
            }
        }
    }
    throw std::invalid_argument("unrecognized method: '" + text + "'");
}

std::string MethodSpec::to_string() const {
    switch (kind) {
        case MethodKind::euler: return "euler";
        case MethodKind::heun: return "heun";
        case MethodKind::rk4: return "rk4";
        case MethodKind::plms: return "plms" + std::to_string(order);
        case MethodKind::glms:
            return "glms" + std::to_string(order) +
                   (glms_mode == GlmsMode::verbatim ? ":verbatim" : ":corrected");
    }
    return "?";
}

int MethodSpec::evals_per_step() const {
    switch (kind) {
        case MethodKind::heun: return 2;
        case MethodKind::rk4: return 4;
        default: return 1;
    }
}

EvalBuffer::EvalBuffer(int max_order) : max_order_(max_order) {
    if (max_order_ < 1 || max_order_ > 4)
        throw std::invalid_argument("buffer order must be between 1 and 4");
}

void EvalBuffer::push(Vec e) {
    entries_.insert(entries_.begin(), std::move(e));
    if (static_cast<int>(entries_.size()) > max_order_) entries_.pop_back();
}

Vec euler_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x) {
    require_finite(x, "euler_step");
    Vec out = x;
    axpy(out, sigma_next - sigma_n, field(sigma_n, x));
    return out;
}

Vec heun_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x) {
    require_finite(x, "heun_step");
    const double h = sigma_next - sigma_n;
    const Vec e1 = field(sigma_n, x);
    Vec probe = x;
    axpy(probe, h, e1);
    const Vec e2 = field(sigma_next, probe);
    Vec out = x;
    axpy(out, h / 2.0, e1);
    axpy(out, h / 2.0, e2);
    return out;
}

Vec rk4_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x) {
    require_finite(x, "rk4_step");
    const double h = sigma_next - sigma_n;
    const double sigma_mid = sigma_n + h / 2.0;
    const Vec e1 = field(sigma_n, x);
    Vec p = x;
    axpy(p, h / 2.0, e1);
    const Vec e2 = field(sigma_mid, p);
    p = x;
    axpy(p, h / 2.0, e2);
    const Vec e3 = field(sigma_mid, p);
    p = x;
    axpy(p, h, e3);
    const Vec e4 = field(sigma_next, p);
    Vec out = x;
    axpy(out, h / 6.0, e1);
    axpy(out, h / 3.0, e2);
    axpy(out, h / 3.0, e3);
    axpy(out, h / 6.0, e4);
    return out;
}

std::vector<double> plms_coefficients(int order, int available_history) {
    if (order < 1 || order > 4) throw std::invalid_argument("multistep order must be 1..4");
    if (available_history < 1 || available_history > order)
        throw std::invalid_argument("available history must be 1..order");
    switch (available_history) {
        case 1: return {1.0};
        case 2: return {1.5, -0.5};
        case 3: return {23.0 / 12.0, -16.0 / 12.0, 5.0 / 12.0};
        default: return {55.0 / 24.0, -59.0 / 24.0, 37.0 / 24.0, -9.0 / 24.0};
    }
}

Vec plms_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x,
              EvalBuffer& buffer, int order) {
    require_finite(x, "plms_step");
    if (order < 1 || order > 4) throw std::invalid_argument("multistep order must be 1..4");
    buffer.push(field(sigma_n, x));
    const int c = std::min(order, buffer.count());
    const auto w = plms_coefficients(order, c);
    Vec out = x;
    const double h = sigma_next - sigma_n;
    for (int k = 0; k < c; ++k) axpy(out, h * w[k], buffer[k]);
    return out;
}

namespace {

// Closed forms of the three correction brackets; each is the integral of
// u(u+1)...(u+k-1) e^{u b} against b/(e^b - 1) du on [0, 1], i.e. the Newton
// basis term without its 1/k! factor.
struct Brackets {
    double b1, b2, b3;
};

Brackets brackets_closed_form(double b) {
    const double eb = std::exp(b);
    const double E = eb / (eb - 1.0);
    const double ib = 1.0 / b;
    const double ib2 = ib * ib;
    const double ib3 = ib2 * ib;
    Brackets w;
    w.b1 = E - ib;
    w.b2 = E * (2.0 - 2.0 * ib) - ib + 2.0 * ib2;
    w.b3 = E * (6.0 - 9.0 * ib + 6.0 * ib2) - 2.0 * ib + 6.0 * ib2 - 6.0 * ib3;
    return w;
}

// Series about b = 0, accurate to machine precision for |b| <= 0.02; the
// closed forms cancel catastrophically there.
Brackets brackets_series(double b) {
    const double b2 = b * b;
    const double b3 = b2 * b;
    const double b4 = b2 * b2;
    const double b5 = b4 * b;
    const double b6 = b4 * b2;
    Brackets w;
    w.b1 = 0.5 + b / 12.0 - b3 / 720.0 + b5 / 30240.0;
    w.b2 = 5.0 / 6.0 + b / 6.0 + b2 / 360.0 - b3 / 360.0 - b4 / 15120.0 + b5 / 15120.0 +
           b6 / 604800.0;
    w.b3 = 9.0 / 4.0 + 59.0 * b / 120.0 + b2 / 80.0 - 41.0 * b3 / 5040.0 - b4 / 3360.0 +
           13.0 * b5 / 67200.0 + b6 / 134400.0;
    return w;
}

}  // namespace

GlmsWeights glms_coefficients(double b, int order, GlmsMode mode) {
    if (!(b < 0.0)) throw std::invalid_argument("b must be negative (decreasing schedule)");
    if (order < 1 || order > 4) throw std::invalid_argument("multistep order must be 1..4");
    const Brackets w = (std::abs(b) < 0.02) ? brackets_series(b) : brackets_closed_form(b);
    GlmsWeights out{w.b1, w.b2, w.b3};
    if (mode == GlmsMode::corrected) {
        out.second /= 2.0;
        out.third /= 6.0;
    }
    return out;
}

Vec glms_step(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x,
              EvalBuffer& buffer, int order, GlmsMode mode) {
    require_finite(x, "glms_step");
    if (!(sigma_n > 0.0 && sigma_next > 0.0))
        throw std::invalid_argument("glms requires positive sigma levels");
    const double b = std::log(sigma_next) - std::log(sigma_n);
    const GlmsWeights w = glms_coefficients(b, order, mode);

    buffer.push(field(sigma_n, x));
    const int c = std::min(order, buffer.count());
    Vec ehat = buffer[0];
    if (c >= 2) {
        Vec d1 = buffer[0] - buffer[1];
        axpy(ehat, w.first, d1);
    }
    if (c >= 3) {
        Vec d2 = buffer[0] - 2.0 * buffer[1] + buffer[2];
        axpy(ehat, w.second, d2);
    }
    if (c >= 4) {
        Vec d3 = buffer[0] - 3.0 * buffer[1] + 3.0 * buffer[2] - buffer[3];
        axpy(ehat, w.third, d3);
    }
    Vec out = x;
    axpy(out, sigma_next - sigma_n, ehat);
    return out;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double m,
                        double fm, double b, double fb, double whole, double tol, int depth) {
    const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("quadrature failed to converge");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, fm, rm, frm, b, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = (a + b) / 2.0;
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 48);
}

}  // namespace

std::vector<double> quadrature_newton_weights(double b, int order) {
    if (!(b < 0.0)) throw std::invalid_argument("b must be negative");
    if (order < 2 || order > 4) throw std::invalid_argument("order must be 2..4");
    const double mass = b / (std::exp(b) - 1.0);
    std::vector<double> out;
    for (int k = 2; k <= order; ++k) {
        auto basis = [k](double u) {
            double p = u;
            double fact = 1.0;
            for (int j = 1; j < k - 1; ++j) {
                p *= (u + j);
                fact *= (j + 1);
            }
            return p / fact;
        };
        auto integrand = [&](double u) { return basis(u) * std::exp(u * b) * mass; };
        out.push_back(integrate(integrand, 0.0, 1.0, 1e-13));
    }
    return out;
}

Vec Stepper::advance(const FieldFn& field, double sigma_n, double sigma_next, const Vec& x) {
    switch (spec_.kind) {
        case MethodKind::euler: return euler_step(field, sigma_n, sigma_next, x);
        case MethodKind::heun: return heun_step(field, sigma_n, sigma_next, x);
        case MethodKind::rk4: return rk4_step(field, sigma_n, sigma_next, x);
        case MethodKind::plms: return plms_step(field, sigma_n, sigma_next, x, buffer_, spec_.order);
        case MethodKind::glms:
            return glms_step(field, sigma_n, sigma_next, x, buffer_, spec_.order, spec_.glms_mode);
    }
    throw std::logic_error("unhandled method kind");
}

}  // namespace splitsolve
