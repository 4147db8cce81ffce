#pragma once

#include <functional>
#include <string>

namespace tanbundle {

/* The scalar weight family a(t) of a tangent-bundle metric, with its first and
 * second t-derivatives supplied in closed form. t >= 0 is the energy density;
 * r = sqrt(1 + 2t). Presets:
 *   cheeger_gromoll   a = 1/(1+2t)
 *   almost_kaehler    a = 2 e^(r-1) / (1+r)
 *   flat              a = 4 e^(2(r-1)) / (1+r)^2
 *   integrable(c,k)   a = e^(2r) / (c e^(2r) (r^2-1) + k (1+r)^2),  c >= 0, k > 0
 *   constant(k)       a = k
 */
class WeightFunction {
public:
    struct Eval {
        double a;
        double a1; // da/dt
        double a2; // d2a/dt2
    };

    Eval eval(double t) const; // DomainError for t < 0, WeightValidityError for a <= 0
    double a(double t) const { return eval(t).a; }

    const std::string& name() const { return name_; }

    static WeightFunction cheeger_gromoll();
    static WeightFunction almost_kaehler();
    static WeightFunction flat();
    static WeightFunction integrable(double c, double k);
    static WeightFunction constant(double k);
    static WeightFunction custom(std::function<double(double)> a,
                                 std::function<double(double)> a1,
                                 std::function<double(double)> a2,
                                 std::string name = "custom");

    /* true only for the flat preset, whose curvature coefficients vanish
     * identically; lets f_coeffs return exact zeros instead of round-off. */
    bool is_exact_flat() const { return exact_flat_; }

private:
    WeightFunction() = default;

    std::function<Eval(double)> fn_;
    std::string name_;
    bool exact_flat_ = false;
};

/* L = a'/(2a) */
double L_of(const WeightFunction& w, double t);

/* dL/dt = a''/(2a) - 2 L^2 */
double L_prime_of(const WeightFunction& w, double t);

/* Curvature coefficients, with L' = dL/dt and r = sqrt(1+2t):
 *   F1 = L' + L(1-L)/r^2
 *   F2 = L^2 - (1-L)^2/r^2
 *   F3 = (L' - L^2)/r^2 + (1-L)/r^4 */
struct FCoeffs {
    double F1, F2, F3;
};
FCoeffs f_coeffs(const WeightFunction& w, double t);

/* a'/a - 1/(1+r): the defining residual of the almost_kaehler preset, which is
 * identically zero there. Measurement shows that zeroing this residual does
 * not close the Kaehler form; dOmega = 0 requires the half-log version
 * a'/(2a) - 1/(1+r) = 0 instead, which the flat preset satisfies. */
double almost_kaehler_residual(const WeightFunction& w, double t);

/* (2a - (1+r) a') / (2 a^2 r (1+r)): constant in t iff the structure can be
 * integrable; its constant value is the base curvature c. */
double kaehler_obstruction(const WeightFunction& w, double t);

/* Left-hand side of the constant-scalar-curvature criterion on a space form of
 * curvature c and dimension m; the metric has constant scalar curvature iff
 * this function of t is constant. */
double scal_ode_lhs(const WeightFunction& w, double c, int m, double t);

} // namespace tanbundle
