#include "tanbundle/closed_form_geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "tanbundle/errors.hpp"

namespace tanbundle {

namespace {

using Eigen::VectorXd;

void check_base_vector(const BundlePoint& p, const VectorXd& X, const char* what) {
    if (X.size() != p.man->dim())
        throw UsageError(std::string(what) + ": base vector has wrong dimension");
}

double inner(const BundlePoint& p, const VectorXd& X, const VectorXd& Y) {
    return X.dot(p.g * Y);
}

/* (R(A,B)C)^l from the contravariant components of the curvature. */
VectorXd curv_apply(const TensorValue& up, const VectorXd& A, const VectorXd& B,
                    const VectorXd& C) {
    const int m = static_cast<int>(A.size());
    VectorXd out = VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) {
        if (A[i] == 0.0) continue;
        for (int j = 0; j < m; ++j) {
            const double ab = A[i] * B[j];
            if (ab == 0.0) continue;
            for (int k = 0; k < m; ++k) {
                const double abc = ab * C[k];
                if (abc == 0.0) continue;
                for (int l = 0; l < m; ++l) out[l] += up.at4(i, j, k, l) * abc;
            }
        }
    }
    return out;
}

/* ((nabla_E R)(X,Y)Z)^l */
VectorXd nabla_curv_apply(const TensorValue& nab, const VectorXd& E, const VectorXd& X,
                          const VectorXd& Y, const VectorXd& Z) {
    const int m = static_cast<int>(E.size());
    VectorXd out = VectorXd::Zero(m);
    for (int e = 0; e < m; ++e) {
        if (E[e] == 0.0) continue;
        for (int i = 0; i < m; ++i) {
            const double c2 = E[e] * X[i];
            if (c2 == 0.0) continue;
            for (int j = 0; j < m; ++j) {
                const double c3 = c2 * Y[j];
                if (c3 == 0.0) continue;
                for (int k = 0; k < m; ++k) {
                    const double c4 = c3 * Z[k];
                    if (c4 == 0.0) continue;
                    for (int l = 0; l < m; ++l) out[l] += nab.at5(e, i, j, k, l) * c4;
                }
            }
        }
    }
    return out;
}

/* (nabla_X Y)^k = Gamma^k_{ij} X^i Y^j for a chart-constant field Y. */
VectorXd gamma_apply(const BundlePoint& p, const VectorXd& X, const VectorXd& Y) {
    const int m = static_cast<int>(X.size());
    VectorXd out = VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) {
        if (X[i] == 0.0) continue;
        for (int j = 0; j < m; ++j) {
            const double xy = X[i] * Y[j];
            if (xy == 0.0) continue;
            for (int k = 0; k < m; ++k) out[k] += p.gamma.at3(i, j, k) * xy;
        }
    }
    return out;
}

} // namespace

TMVector nabla_tilde(const BundlePoint& p, const WeightFunction& w, LiftPair kind,
                     const VectorXd& X, const VectorXd& Y, const FDConfig& fd) {
    check_base_vector(p, X, "nabla_tilde");
    check_base_vector(p, Y, "nabla_tilde");
    const int m = p.man->dim();
    const auto ev = w.eval(p.t);
    const VectorXd& u = p.y;
    VectorXd h = VectorXd::Zero(m), v = VectorXd::Zero(m);
    switch (kind) {
    case LiftPair::HH: {
        const RiemannValue R = riemann_at(*p.man, p.x, fd);
        h = gamma_apply(p, X, Y);
        v = -0.5 * curv_apply(R.up, X, Y, u);
        break;
    }
    case LiftPair::HV: {
        const RiemannValue R = riemann_at(*p.man, p.x, fd);
        h = 0.5 * ev.a * curv_apply(R.up, u, Y, X);
        v = gamma_apply(p, X, Y);
        break;
    }
    case LiftPair::VH: {
        const RiemannValue R = riemann_at(*p.man, p.x, fd);
        h = 0.5 * ev.a * curv_apply(R.up, u, X, Y);
        break;
    }
    case LiftPair::VV: {
        const double L = ev.a1 / (2.0 * ev.a);
        const double r2 = p.r * p.r;
        const double gXu = inner(p, X, u), gYu = inner(p, Y, u), gXY = inner(p, X, Y);
        v = L * (gXu * Y + gYu * X) + ((1.0 - L) / r2) * gXY * u -
            (L / r2) * gXu * gYu * u;
        break;
    }
    }
    return tm_vector(p, h, v);
}

TMVector curvature_tilde(const BundlePoint& p, const WeightFunction& w, CurvatureCase which,
                         const VectorXd& X, const VectorXd& Y, const VectorXd& Z,
                         const FDConfig& fd) {
    check_base_vector(p, X, "curvature_tilde");
    check_base_vector(p, Y, "curvature_tilde");
    check_base_vector(p, Z, "curvature_tilde");
    const int m = p.man->dim();
    const auto ev = w.eval(p.t);
    const double a = ev.a, a1 = ev.a1;
    const double L = a1 / (2.0 * a);
    const double r2 = p.r * p.r;
    const VectorXd& u = p.y;
    VectorXd h = VectorXd::Zero(m), v = VectorXd::Zero(m);

    RiemannValue R;
    if (which != CurvatureCase::VVV) R = riemann_at(*p.man, p.x, fd);
    const auto Rop = [&](const VectorXd& A, const VectorXd& B, const VectorXd& C) {
        return curv_apply(R.up, A, B, C);
    };

    switch (which) {
    case CurvatureCase::HHH: {
        const TensorValue NR = nabla_riemann_at(*p.man, p.x, fd);
        h = Rop(X, Y, Z) + (a / 4.0) * (Rop(u, Rop(X, Z, u), Y) - Rop(u, Rop(Y, Z, u), X) +
                                        2.0 * Rop(u, Rop(X, Y, u), Z));
        v = 0.5 * nabla_curv_apply(NR, Z, X, Y, u);
        break;
    }
    case CurvatureCase::HHV: {
        const TensorValue NR = nabla_riemann_at(*p.man, p.x, fd);
        const VectorXd RXYu = Rop(X, Y, u);
        v = Rop(X, Y, Z) + (a / 4.0) * (Rop(Y, Rop(u, Z, X), u) - Rop(X, Rop(u, Z, Y), u)) +
            L * inner(p, Z, u) * RXYu + ((1.0 - L) / r2) * inner(p, RXYu, Z) * u;
        h = (a / 2.0) * (nabla_curv_apply(NR, X, u, Z, Y) - nabla_curv_apply(NR, Y, u, Z, X));
        break;
    }
    case CurvatureCase::HVH: {
        const TensorValue NR = nabla_riemann_at(*p.man, p.x, fd);
        h = (a / 2.0) * nabla_curv_apply(NR, X, u, Y, Z);
        const VectorXd RXZu = Rop(X, Z, u);
        v = 0.5 * (Rop(X, Z, Y) - (a / 2.0) * Rop(X, Rop(u, Y, Z), u) +
                   L * inner(p, Y, u) * RXZu + ((1.0 - L) / r2) * inner(p, RXZu, Y) * u);
        break;
    }
    case CurvatureCase::HVV: {
        h = -(a / 2.0) * Rop(Y, Z, X) - (a * a / 4.0) * Rop(u, Y, Rop(u, Z, X)) +
            (a1 / 4.0) * (inner(p, Z, u) * Rop(u, Y, X) - inner(p, Y, u) * Rop(u, Z, X));
        break;
    }
    case CurvatureCase::VVH: {
        h = a * Rop(X, Y, Z) +
            (a1 / 2.0) * (inner(p, X, u) * Rop(u, Y, Z) - inner(p, Y, u) * Rop(u, X, Z)) +
            (a * a / 4.0) * (Rop(u, X, Rop(u, Y, Z)) - Rop(u, Y, Rop(u, X, Z)));
        break;
    }
    case CurvatureCase::VVV: {
        const FCoeffs F = f_coeffs(w, p.t);
        const double gXu = inner(p, X, u), gYu = inner(p, Y, u), gZu = inner(p, Z, u);
        const double gXZ = inner(p, X, Z), gYZ = inner(p, Y, Z);
        v = F.F1 * gZu * (gXu * Y - gYu * X) + F.F2 * (gXZ * Y - gYZ * X) +
            F.F3 * (gXZ * gYu - gYZ * gXu) * u;
        break;
    }
    }
    return tm_vector(p, h, v);
}

double area_sq(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
               const TMVector& V) {
    const double uu = g_a_eval(p, w, U, U);
    const double vv = g_a_eval(p, w, V, V);
    const double uv = g_a_eval(p, w, U, V);
    return uu * vv - uv * uv;
}

double SectionalTable::at(int A, int B) const {
    if (A > B) std::swap(A, B);
    for (const auto& e : entries)
        if (e.A == A && e.B == B) return e.value;
    throw UsageError("sectional table has no such frame pair");
}

SectionalTable sectional_table(const BundlePoint& p, const WeightFunction& w,
                               const FDConfig& fd) {
    const int m = p.man->dim();
    const auto e = orthonormal_base_frame(p); // throws at u = 0
    const auto ev = w.eval(p.t);
    const double a = ev.a;
    const FCoeffs F = f_coeffs(w, p.t);
    const RiemannValue R = riemann_at(*p.man, p.x, fd);
    const VectorXd& u = p.y;

    SectionalTable table;
    table.m = m;
    const auto add = [&](int A, int B, PairClass cls, double value) {
        table.entries.push_back({A, B, cls, value});
    };

    // horizontal-horizontal: K(e_i,e_j) - (3a/4)|R(e_i,e_j)u|^2
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const VectorXd Rij = curv_apply(R.up, e[i], e[j], e[j]);
            const double num = inner(p, Rij, e[i]);
            const double den = inner(p, e[i], e[i]) * inner(p, e[j], e[j]) -
                               inner(p, e[i], e[j]) * inner(p, e[i], e[j]);
            const VectorXd Ru = curv_apply(R.up, e[i], e[j], u);
            add(i, j, PairClass::HH, num / den - (3.0 * a / 4.0) * inner(p, Ru, Ru));
        }
    // horizontal vs first vertical leg: exactly zero
    for (int i = 0; i < m; ++i) add(i, m, PairClass::H_V1, 0.0);
    // horizontal vs k-th vertical leg (k >= 2): (a/4)|R(u,e_k)e_i|^2
    for (int k = 1; k < m; ++k)
        for (int i = 0; i < m; ++i) {
            const VectorXd Ru = curv_apply(R.up, u, e[k], e[i]);
            add(i, m + k, PairClass::H_Vk, (a / 4.0) * inner(p, Ru, Ru));
        }
    // vertical-vertical
    for (int k = 1; k < m; ++k)
        add(m, m + k, PairClass::V1_Vk, -(F.F2 + 2.0 * p.t * F.F3) / a);
    for (int k = 1; k < m; ++k)
        for (int l = k + 1; l < m; ++l) add(m + k, m + l, PairClass::Vk_Vl, -F.F2 / a);
    return table;
}

TMVector nijenhuis_closed(const BundlePoint& p, const WeightFunction& w, NijenhuisCase which,
                          const VectorXd& X, const VectorXd& Y, const FDConfig& fd) {
    if (which == NijenhuisCase::HV)
        throw UnsupportedOperationError(
            "no closed form is provided for the mixed Nijenhuis component; use the numeric oracle");
    check_base_vector(p, X, "nijenhuis_closed");
    check_base_vector(p, Y, "nijenhuis_closed");
    const int m = p.man->dim();
    const auto ev = w.eval(p.t);
    const double a = ev.a, a1 = ev.a1, r = p.r;
    const VectorXd& u = p.y;
    const RiemannValue R = riemann_at(*p.man, p.x, fd);
    const double gXu = inner(p, X, u), gYu = inner(p, Y, u);
    VectorXd v(m);
    if (which == NijenhuisCase::HH) {
        const double obstr = (2.0 * a - (1.0 + r) * a1) / (2.0 * a * a * r * (1.0 + r));
        v = obstr * (gXu * Y - gYu * X) + curv_apply(R.up, X, Y, u);
    } else {
        const double coeff = a1 / (2.0 * a) - 1.0 / (1.0 + r);
        v = -a * curv_apply(R.up, X, Y, u) -
            (a / (1.0 + r)) * gYu * curv_apply(R.up, X, u, u) +
            (a / (1.0 + r)) * gXu * curv_apply(R.up, Y, u, u) -
            coeff * (gYu * X - gXu * Y);
    }
    return tm_vector(p, VectorXd::Zero(m), v);
}

double scalar_tilde(const BundlePoint& p, const WeightFunction& w, const FDConfig& fd) {
    if (p.y.dot(p.g * p.y) > 1e-24)
        return scalar_tilde_with_frame(p, w, orthonormal_base_frame(p), fd);
    // at u = 0 the curvature sum vanishes for every orthonormal frame
    return scalar_tilde_with_frame(p, w, {}, fd);
}

double scalar_tilde_with_frame(const BundlePoint& p, const WeightFunction& w,
                               const std::vector<VectorXd>& e_frame, const FDConfig& fd) {
    const int m = p.man->dim();
    const auto ev = w.eval(p.t);
    const FCoeffs F = f_coeffs(w, p.t);
    const double scal = scalar_at(*p.man, p.x, fd);
    double sum = 0.0;
    if (!e_frame.empty()) {
        if (static_cast<int>(e_frame.size()) != m)
            throw UsageError("scalar_tilde_with_frame: frame must have m vectors");
        const RiemannValue R = riemann_at(*p.man, p.x, fd);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                const VectorXd Ru = curv_apply(R.up, e_frame[i], e_frame[j], p.y);
                sum += inner(p, Ru, Ru);
            }
    }
    return scal - (ev.a / 2.0) * sum + ((1.0 - m) / ev.a) * (m * F.F2 + 4.0 * p.t * F.F3);
}

} // namespace tanbundle
