#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tanbundle/closed_form_geometry.hpp"
#include "tanbundle/errors.hpp"
#include "tanbundle/rng.hpp"

using namespace tanbundle;
using Eigen::VectorXd;

namespace {

VectorXd vec2(double a, double b) {
    VectorXd v(2);
    v << a, b;
    return v;
}

VectorXd vec3(double a, double b, double c) {
    VectorXd v(3);
    v << a, b, c;
    return v;
}

double tm_norm(const TMVector& U) {
    return std::max(U.h.cwiseAbs().maxCoeff(), U.v.cwiseAbs().maxCoeff());
}

BundlePoint sphere_point() {
    static ChartedManifold man = ChartedManifold::sphere(1.0, 2);
    return make_point(man, vec2(0.19, 0.07), vec2(0.55, -0.4));
}

const std::vector<CurvatureCase> kAllCases = {CurvatureCase::HHH, CurvatureCase::HHV,
                                              CurvatureCase::HVH, CurvatureCase::HVV,
                                              CurvatureCase::VVH, CurvatureCase::VVV};

} // namespace

TEST_CASE("nabla_tilde: Euclidean closed-form cases") {
    auto man = ChartedManifold::euclidean(2);
    auto w = WeightFunction::constant(1.0);
    auto p = make_point(man, vec2(0.0, 0.0), vec2(1.0, 0.0)); // u = e1, t = 1/2
    VectorXd X = vec2(0.0, 1.0);                              // unit, orthogonal to u
    // HH on a flat base with constant fields: both parts vanish
    auto hh = nabla_tilde(p, w, LiftPair::HH, X, X);
    CHECK(tm_norm(hh) == 0.0);
    // VV with X = Y orthogonal to u and L = 0: only (1-L)/r^2 g(X,X) u^V survives
    auto vv = nabla_tilde(p, w, LiftPair::VV, X, X);
    CHECK(vv.h.cwiseAbs().maxCoeff() == 0.0);
    CHECK((vv.v - p.y / (p.r * p.r)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("nabla_tilde: VH with X = u vanishes by antisymmetry") {
    auto p = sphere_point();
    auto w = WeightFunction::cheeger_gromoll();
    VectorXd Y = vec2(0.3, 0.8);
    auto out = nabla_tilde(p, w, LiftPair::VH, p.y, Y);
    CHECK(tm_norm(out) <= 1e-14);
}

TEST_CASE("nabla_tilde: VV vanishes entirely at u = 0") {
    auto man = ChartedManifold::euclidean(2);
    auto p = make_point(man, vec2(0.2, 0.1), vec2(0.0, 0.0));
    auto out = nabla_tilde(p, WeightFunction::cheeger_gromoll(), LiftPair::VV, vec2(1.0, 0.4),
                           vec2(-0.2, 0.9));
    CHECK(tm_norm(out) == 0.0);
}

TEST_CASE("curvature_tilde: flat weight on the flat base gives exact zeros") {
    auto man = ChartedManifold::euclidean(2);
    auto w = WeightFunction::flat();
    auto p = make_point(man, vec2(0.25, -0.33), vec2(0.8, 0.6));
    VectorXd X = vec2(1.0, 0.2), Y = vec2(-0.3, 0.8), Z = vec2(0.5, -0.6);
    for (auto cs : kAllCases) {
        auto out = curvature_tilde(p, w, cs, X, Y, Z);
        CHECK(tm_norm(out) == 0.0);
    }
}

TEST_CASE("curvature_tilde: VVV on orthonormal perpendicular arguments") {
    auto man = ChartedManifold::euclidean(3);
    auto w = WeightFunction::cheeger_gromoll();
    auto p = make_point(man, vec3(0.0, 0.0, 0.0), vec3(0.0, 0.0, 1.2)); // u along e3
    VectorXd X = vec3(1.0, 0.0, 0.0), Y = vec3(0.0, 1.0, 0.0);
    // g(X,u) = g(Y,u) = 0, g(X,Z)=1, g(Y,Z)=0 with Z = X: only F2 g(X,Z) Y survives
    auto out = curvature_tilde(p, w, CurvatureCase::VVV, X, Y, X);
    const FCoeffs F = f_coeffs(w, p.t);
    CHECK(out.h.cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.v - F.F2 * Y).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("curvature_tilde: space forms have no HHH vertical part") {
    auto p = sphere_point();
    auto w = WeightFunction::almost_kaehler();
    auto out = curvature_tilde(p, w, CurvatureCase::HHH, vec2(1.0, 0.2), vec2(-0.3, 0.8),
                               vec2(0.4, 0.4));
    CHECK(out.v.cwiseAbs().maxCoeff() == 0.0); // nabla R = 0 exactly on the model
    CHECK(out.h.cwiseAbs().maxCoeff() > 0.1);  // while the horizontal part is honest curvature
}

TEST_CASE("curvature_tilde: antisymmetry and the first Bianchi identity") {
    auto p = sphere_point();
    auto w = WeightFunction::cheeger_gromoll();
    VectorXd X = vec2(1.0, 0.2), Y = vec2(-0.3, 0.8), Z = vec2(0.5, -0.1);
    const auto diff = [&](const TMVector& A, const TMVector& B) {
        return std::max((A.h + B.h).cwiseAbs().maxCoeff(), (A.v + B.v).cwiseAbs().maxCoeff());
    };
    // R(X,Y)Z = -R(Y,X)Z within each swappable case
    CHECK(diff(curvature_tilde(p, w, CurvatureCase::HHH, X, Y, Z),
               curvature_tilde(p, w, CurvatureCase::HHH, Y, X, Z)) <= 1e-12);
    CHECK(diff(curvature_tilde(p, w, CurvatureCase::HHV, X, Y, Z),
               curvature_tilde(p, w, CurvatureCase::HHV, Y, X, Z)) <= 1e-12);
    CHECK(diff(curvature_tilde(p, w, CurvatureCase::VVH, X, Y, Z),
               curvature_tilde(p, w, CurvatureCase::VVH, Y, X, Z)) <= 1e-12);
    CHECK(diff(curvature_tilde(p, w, CurvatureCase::VVV, X, Y, Z),
               curvature_tilde(p, w, CurvatureCase::VVV, Y, X, Z)) <= 1e-12);

    const auto cyc = [&](const TMVector& A, const TMVector& B, const TMVector& C) {
        return std::max((A.h + B.h + C.h).cwiseAbs().maxCoeff(),
                        (A.v + B.v + C.v).cwiseAbs().maxCoeff());
    };
    // all-horizontal and all-vertical cyclic sums
    CHECK(cyc(curvature_tilde(p, w, CurvatureCase::HHH, X, Y, Z),
              curvature_tilde(p, w, CurvatureCase::HHH, Y, Z, X),
              curvature_tilde(p, w, CurvatureCase::HHH, Z, X, Y)) <= 1e-12);
    CHECK(cyc(curvature_tilde(p, w, CurvatureCase::VVV, X, Y, Z),
              curvature_tilde(p, w, CurvatureCase::VVV, Y, Z, X),
              curvature_tilde(p, w, CurvatureCase::VVV, Z, X, Y)) <= 1e-12);
    // mixed sums: R(X^H,Y^H)Z^V + R(Y^H,Z^V)X^H + R(Z^V,X^H)Y^H = 0
    {
        auto A = curvature_tilde(p, w, CurvatureCase::HHV, X, Y, Z);
        auto B = curvature_tilde(p, w, CurvatureCase::HVH, Y, Z, X);
        auto Cm = curvature_tilde(p, w, CurvatureCase::HVH, X, Z, Y); // = -R(Z^V,X^H)Y^H
        CHECK(std::max((A.h + B.h - Cm.h).cwiseAbs().maxCoeff(),
                       (A.v + B.v - Cm.v).cwiseAbs().maxCoeff()) <= 1e-12);
    }
    // R(X^H,Y^V)Z^V + R(Y^V,Z^V)X^H + R(Z^V,X^H)Y^V = 0
    {
        auto A = curvature_tilde(p, w, CurvatureCase::HVV, X, Y, Z);
        auto B = curvature_tilde(p, w, CurvatureCase::VVH, Y, Z, X);
        auto Cm = curvature_tilde(p, w, CurvatureCase::HVV, X, Z, Y);
        CHECK(std::max((A.h + B.h - Cm.h).cwiseAbs().maxCoeff(),
                       (A.v + B.v - Cm.v).cwiseAbs().maxCoeff()) <= 1e-12);
    }
}

TEST_CASE("area_sq: parallelogram values for lifted orthonormal vectors") {
    auto man = ChartedManifold::euclidean(3);
    auto w = WeightFunction::cheeger_gromoll();
    auto p = make_point(man, vec3(0.0, 0.0, 0.0), vec3(0.0, 0.0, 0.9));
    const double a = w.a(p.t);
    VectorXd X = vec3(1.0, 0.0, 0.0), Y = vec3(0.0, 1.0, 0.0);
    auto XH = lift(p, X, LiftKind::horizontal), YH = lift(p, Y, LiftKind::horizontal);
    auto XV = lift(p, X, LiftKind::vertical), YV = lift(p, Y, LiftKind::vertical);
    CHECK(area_sq(p, w, XH, YH) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(area_sq(p, w, XH, YV) == doctest::Approx(a).epsilon(1e-12));
    CHECK(area_sq(p, w, XV, YV) == doctest::Approx(a * a).epsilon(1e-12));
    // fiber direction: Q(X^H, (u/|u|)^V) = a (1 + 2t)
    VectorXd un = p.y / std::sqrt(2.0 * p.t);
    CHECK(area_sq(p, w, XH, lift(p, un, LiftKind::vertical)) ==
          doctest::Approx(a * (1.0 + 2.0 * p.t)).epsilon(1e-12));
    CHECK(area_sq(p, w, XH, XH) == doctest::Approx(0.0));
}

TEST_CASE("sectional_table: Euclidean values and the t -> 0 limit") {
    auto man = ChartedManifold::euclidean(3);
    auto w = WeightFunction::cheeger_gromoll();
    auto p = make_point(man, vec3(0.0, 0.0, 0.0), vec3(0.4, -0.2, 0.1));
    auto table = sectional_table(p, w);
    CHECK(table.entries.size() == 15); // all pairs over the 6-dim frame
    const FCoeffs F = f_coeffs(w, p.t);
    const double a = w.a(p.t);
    for (const auto& e : table.entries) {
        switch (e.cls) {
        case PairClass::HH:
        case PairClass::H_V1:
        case PairClass::H_Vk:
            CHECK(e.value == 0.0); // flat base kills every curvature norm
            break;
        case PairClass::V1_Vk:
            CHECK(e.value == doctest::Approx(-(F.F2 + 2.0 * p.t * F.F3) / a).epsilon(1e-12));
            break;
        case PairClass::Vk_Vl:
            CHECK(e.value == doctest::Approx(-F.F2 / a).epsilon(1e-12));
            break;
        }
    }
    // lookup works in either order and rejects absent pairs
    CHECK(table.at(4, 3) == table.at(3, 4));
    CHECK_THROWS_AS(table.at(0, 0), UsageError);
    // vertical-vertical value tends to 3 for the reciprocal weight as t -> 0+
    auto p0 = make_point(man, vec3(0.0, 0.0, 0.0), vec3(1e-5, 0.0, 0.0));
    CHECK(sectional_table(p0, w).at(4, 5) == doctest::Approx(3.0).epsilon(1e-6));
    // u = 0 degenerates the frame
    auto pz = make_point(man, vec3(0.0, 0.0, 0.0), vec3(0.0, 0.0, 0.0));
    CHECK_THROWS_AS(sectional_table(pz, w), DegenerateInputError);
}

TEST_CASE("sectional_table: consistent with the curvature tensor and areas") {
    auto p = sphere_point();
    auto w = WeightFunction::cheeger_gromoll();
    auto table = sectional_table(p, w);
    auto E = adapted_frame(p, w);
    auto e = orthonormal_base_frame(p);
    const int m = 2;
    for (const auto& ent : table.entries) {
        const bool a_h = ent.A < m, b_h = ent.B < m;
        const VectorXd ea = a_h ? e[ent.A] : E[ent.A].v;
        const VectorXd eb = b_h ? e[ent.B] : E[ent.B].v;
        TMVector R;
        if (a_h && b_h)
            R = curvature_tilde(p, w, CurvatureCase::HHH, ea, eb, eb);
        else if (a_h && !b_h)
            R = curvature_tilde(p, w, CurvatureCase::HVV, ea, eb, eb);
        else
            R = curvature_tilde(p, w, CurvatureCase::VVV, ea, eb, eb);
        const double k = g_a_eval(p, w, R, E[ent.A]) / area_sq(p, w, E[ent.A], E[ent.B]);
        CHECK(ent.value == doctest::Approx(k).epsilon(1e-8));
    }
}

TEST_CASE("nijenhuis_closed: integrable pairing on the matching space form") {
    ChartedManifold man = ChartedManifold::sphere(1.0, 2);
    auto w = WeightFunction::integrable(1.0, 1.0);
    auto p = make_point(man, vec2(0.19, 0.07), vec2(0.55, -0.4));
    VectorXd X = vec2(1.0, 0.2), Y = vec2(-0.3, 0.8);
    CHECK(tm_norm(nijenhuis_closed(p, w, NijenhuisCase::HH, X, Y)) <= 1e-10);
    CHECK(tm_norm(nijenhuis_closed(p, w, NijenhuisCase::VV, X, Y)) <= 1e-10);
    // a non-integrable weight on the same base does not cancel
    CHECK(tm_norm(nijenhuis_closed(p, WeightFunction::cheeger_gromoll(), NijenhuisCase::HH, X,
                                   Y)) > 1e-2);
    // antisymmetry: N(X, X) = 0
    CHECK(tm_norm(nijenhuis_closed(p, w, NijenhuisCase::VV, X, X)) <= 1e-14);
    // the mixed case has no closed form on purpose
    CHECK_THROWS_AS(nijenhuis_closed(p, w, NijenhuisCase::HV, X, Y), UnsupportedOperationError);
}

TEST_CASE("scalar_tilde: closed examples") {
    auto m2 = ChartedManifold::euclidean(2);
    // flat weight on the flat base: zero at every sample
    auto wf = WeightFunction::flat();
    for (double ynorm : {0.0, 0.4, 1.3}) {
        auto p = make_point(m2, vec2(0.1, -0.2), vec2(ynorm, 0.0));
        CHECK(scalar_tilde(p, wf) == doctest::Approx(0.0));
    }
    // constant weight at t = 0: (1-m)/a * m F2 = (-1)(2)(-1) = 2
    auto w1 = WeightFunction::constant(1.0);
    auto p0 = make_point(m2, vec2(0.0, 0.0), vec2(0.0, 0.0));
    CHECK(scalar_tilde(p0, w1) == doctest::Approx(2.0).epsilon(1e-12));
    // sphere adds its own scalar curvature: 2 + 2 = 4 at the zero section
    ChartedManifold s2 = ChartedManifold::sphere(1.0, 2);
    auto ps = make_point(s2, vec2(0.1, 0.2), vec2(0.0, 0.0));
    CHECK(scalar_tilde(ps, w1) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("scalar_tilde: frame independence of the curvature sum") {
    auto p = sphere_point();
    auto w = WeightFunction::almost_kaehler();
    auto e = orthonormal_base_frame(p);
    const double base = scalar_tilde(p, w);
    for (double th : {0.3, 1.1, 2.7}) {
        std::vector<VectorXd> rot = {std::cos(th) * e[0] + std::sin(th) * e[1],
                                     -std::sin(th) * e[0] + std::cos(th) * e[1]};
        CHECK(scalar_tilde_with_frame(p, w, rot) == doctest::Approx(base).epsilon(1e-9));
    }
    CHECK_THROWS_AS(scalar_tilde_with_frame(p, w, {e[0]}), UsageError);
}

TEST_CASE("scalar_tilde: matches the constant-scalar criterion display at c = 0") {
    auto man = ChartedManifold::euclidean(2);
    for (auto w : {WeightFunction::cheeger_gromoll(), WeightFunction::almost_kaehler(),
                   WeightFunction::constant(2.0), WeightFunction::integrable(1.0, 1.0)}) {
        for (double ynorm : {0.3, 0.9, 1.7}) {
            auto p = make_point(man, vec2(0.0, 0.0), vec2(ynorm, 0.0));
            CHECK(scal_ode_lhs(w, 0.0, 2, p.t) ==
                  doctest::Approx(scalar_tilde(p, w)).epsilon(1e-10));
        }
    }
}
