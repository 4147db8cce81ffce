#include "tanbundle/weights.hpp"

#include <cmath>
#include <utility>

#include "tanbundle/errors.hpp"

namespace tanbundle {

WeightFunction::Eval WeightFunction::eval(double t) const {
    if (!(t >= 0.0)) throw DomainError("weight evaluated at t < 0");
    Eval e = fn_(t);
    if (!(e.a > 0.0)) throw WeightValidityError("weight a(t) must be positive");
    return e;
}

WeightFunction WeightFunction::cheeger_gromoll() {
    WeightFunction w;
    w.name_ = "cheeger_gromoll";
    w.fn_ = [](double t) -> Eval {
        const double s = 1.0 + 2.0 * t;
        return {1.0 / s, -2.0 / (s * s), 8.0 / (s * s * s)};
    };
    return w;
}

WeightFunction WeightFunction::almost_kaehler() {
    WeightFunction w;
    w.name_ = "almost_kaehler";
    w.fn_ = [](double t) -> Eval {
        const double r = std::sqrt(1.0 + 2.0 * t);
        const double a = 2.0 * std::exp(r - 1.0) / (1.0 + r);
        const double a1 = a / (1.0 + r);
        const double a2 = a * (r - 1.0) / (r * (1.0 + r) * (1.0 + r));
        return {a, a1, a2};
    };
    return w;
}

WeightFunction WeightFunction::flat() {
    WeightFunction w;
    w.name_ = "flat";
    w.exact_flat_ = true;
    w.fn_ = [](double t) -> Eval {
        const double r = std::sqrt(1.0 + 2.0 * t);
        const double p = 1.0 + r;
        const double a = 4.0 * std::exp(2.0 * (r - 1.0)) / (p * p);
        const double a1 = 2.0 * a / p;
        const double a2 = 2.0 * a * (2.0 * r - 1.0) / (r * p * p);
        return {a, a1, a2};
    };
    return w;
}

WeightFunction WeightFunction::integrable(double c, double k) {
    if (!(c >= 0.0)) throw UsageError("integrable weight requires c >= 0");
    if (!(k > 0.0)) throw UsageError("integrable weight requires k > 0");
    WeightFunction w;
    w.name_ = "integrable(c=" + std::to_string(c) + ",k=" + std::to_string(k) + ")";
    w.fn_ = [c, k](double t) -> Eval {
        const double r = std::sqrt(1.0 + 2.0 * t);
        const double p = 1.0 + r;
        const double E = std::exp(2.0 * r);
        const double D = c * E * (r * r - 1.0) + k * p * p;
        const double Dp = 2.0 * c * E * (r * r + r - 1.0) + 2.0 * k * p; // dD/dr
        const double N2 = 2.0 * (k * p - c * E);                        // so that da/dr = E*N2/D^2
        const double N2p = 2.0 * (k - 2.0 * c * E);                     // dN2/dr
        const double a = E / D;
        const double a1 = E * N2 / (D * D);
        const double a2 = (E / r) * ((2.0 * N2 + N2p) * D - 2.0 * N2 * Dp) / (D * D * D);
        return {a, a1, a2};
    };
    return w;
}

WeightFunction WeightFunction::constant(double k) {
    if (!(k > 0.0)) throw UsageError("constant weight requires k > 0");
    WeightFunction w;
    w.name_ = "constant(k=" + std::to_string(k) + ")";
    w.fn_ = [k](double) -> Eval { return {k, 0.0, 0.0}; };
    return w;
}

WeightFunction WeightFunction::custom(std::function<double(double)> a,
                                      std::function<double(double)> a1,
                                      std::function<double(double)> a2, std::string name) {
    if (!a || !a1 || !a2) throw UsageError("custom weight needs a, a', a''");
    WeightFunction w;
    w.name_ = std::move(name);
    w.fn_ = [a = std::move(a), a1 = std::move(a1), a2 = std::move(a2)](double t) -> Eval {
        return {a(t), a1(t), a2(t)};
    };
    return w;
}

double L_of(const WeightFunction& w, double t) {
    const auto e = w.eval(t);
    return e.a1 / (2.0 * e.a);
}

double L_prime_of(const WeightFunction& w, double t) {
    const auto e = w.eval(t);
    const double L = e.a1 / (2.0 * e.a);
    return e.a2 / (2.0 * e.a) - 2.0 * L * L;
}

FCoeffs f_coeffs(const WeightFunction& w, double t) {
    if (w.is_exact_flat()) {
        w.eval(t); // domain check
        return {0.0, 0.0, 0.0};
    }
    const auto e = w.eval(t);
    const double r2 = 1.0 + 2.0 * t; // r^2
    const double L = e.a1 / (2.0 * e.a);
    const double Lp = e.a2 / (2.0 * e.a) - 2.0 * L * L;
    const double F1 = Lp + L * (1.0 - L) / r2;
    const double F2 = L * L - (1.0 - L) * (1.0 - L) / r2;
    const double F3 = (Lp - L * L) / r2 + (1.0 - L) / (r2 * r2);
    return {F1, F2, F3};
}

double almost_kaehler_residual(const WeightFunction& w, double t) {
    const auto e = w.eval(t);
    const double r = std::sqrt(1.0 + 2.0 * t);
    return e.a1 / e.a - 1.0 / (1.0 + r);
}

double kaehler_obstruction(const WeightFunction& w, double t) {
    const auto e = w.eval(t);
    const double r = std::sqrt(1.0 + 2.0 * t);
    return (2.0 * e.a - (1.0 + r) * e.a1) / (2.0 * e.a * e.a * r * (1.0 + r));
}

double scal_ode_lhs(const WeightFunction& w, double c, int m, double t) {
    if (m < 2) throw UsageError("scal_ode_lhs requires m >= 2");
    const auto e = w.eval(t);
    const double a = e.a, a1 = e.a1, a2 = e.a2;
    const double s = 1.0 + 2.0 * t;
    const double ct = c + 2.0 * c * t;
    const double inner = -2.0 * (m + 2.0 * (m - 2.0) * t) * a * a -
                         4.0 * t * ct * ct * a * a * a + 6.0 * t * ct * ct * a * a * a * a +
                         (m - 6.0) * t * s * a1 * a1 +
                         2.0 * a * ((m + 2.0 * (m - 1.0) * t) * a1 + 2.0 * t * s * a2);
    return -inner / (2.0 * s * s * a * a * a);
}

} // namespace tanbundle
