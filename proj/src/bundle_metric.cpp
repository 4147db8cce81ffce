#include "tanbundle/bundle_metric.hpp"

#include <cmath>

#include "tanbundle/errors.hpp"

namespace tanbundle {

namespace {

void check_same_anchor(const TMVector& U, const TMVector& V) {
    if (U.at.man != V.at.man || U.at.x != V.at.x || U.at.y != V.at.y)
        throw UsageError("vectors anchored at different bundle points");
}

double fiber_norm_sq(const BundlePoint& p) { return 2.0 * p.t; } // g(u,u)

} // namespace

BundlePoint make_point(const ChartedManifold& man, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y, const FDConfig& fd) {
    if (y.size() != man.dim()) throw UsageError("fiber dimension does not match manifold");
    BundlePoint p;
    p.man = &man;
    p.x = x;
    p.y = y;
    p.g = metric_at(man, x);
    p.gy = p.g * y;
    p.t = 0.5 * y.dot(p.gy);
    p.r = std::sqrt(1.0 + 2.0 * p.t);
    p.gamma = christoffel_at(man, x, fd);
    const int m = man.dim();
    p.A = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += p.gamma.at3(i, j, k) * y[j];
            p.A(i, k) = s;
        }
    return p;
}

TMVector lift(const BundlePoint& p, const Eigen::VectorXd& X, LiftKind kind) {
    if (X.size() != p.man->dim()) throw UsageError("vector dimension does not match manifold");
    TMVector U;
    U.at = p;
    if (kind == LiftKind::horizontal) {
        U.h = X;
        U.v = Eigen::VectorXd::Zero(X.size());
    } else {
        U.h = Eigen::VectorXd::Zero(X.size());
        U.v = X;
    }
    return U;
}

TMVector tm_vector(const BundlePoint& p, const Eigen::VectorXd& h, const Eigen::VectorXd& v) {
    if (h.size() != p.man->dim() || v.size() != p.man->dim())
        throw UsageError("component dimension does not match manifold");
    TMVector U;
    U.at = p;
    U.h = h;
    U.v = v;
    return U;
}

TMVector tm_vector_from_coordinates(const BundlePoint& p, const Eigen::VectorXd& dx,
                                    const Eigen::VectorXd& dy) {
    // dx^i d/dx^i + dy^k d/dy^k = dx^i delta_i + (dy + A^T dx)^k d/dy^k
    return tm_vector(p, dx, dy + p.A.transpose() * dx);
}

Eigen::VectorXd coordinate_dx(const TMVector& U) { return U.h; }

Eigen::VectorXd coordinate_dy(const TMVector& U) { return U.v - U.at.A.transpose() * U.h; }

Eigen::VectorXd coordinates(const TMVector& U) {
    const int m = static_cast<int>(U.h.size());
    Eigen::VectorXd z(2 * m);
    z.head(m) = coordinate_dx(U);
    z.tail(m) = coordinate_dy(U);
    return z;
}

double g_a_eval(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
                const TMVector& V) {
    check_same_anchor(U, V);
    if (U.at.man != p.man || U.at.x != p.x || U.at.y != p.y)
        throw UsageError("vectors not anchored at the evaluation point");
    const double a = w.a(p.t);
    const double hh = U.h.dot(p.g * V.h);
    const double vv = U.v.dot(p.g * V.v) + U.v.dot(p.gy) * V.v.dot(p.gy);
    return hh + a * vv;
}

Eigen::MatrixXd induced_coordinate_metric(const BundlePoint& p, const WeightFunction& w) {
    const int m = p.man->dim();
    const double a = w.a(p.t);
    // vertical pairing matrix: a (g + (g y)(g y)^T)
    const Eigen::MatrixXd V = a * (p.g + p.gy * p.gy.transpose());
    Eigen::MatrixXd G(2 * m, 2 * m);
    // d/dx^i = delta_i + A(i,:) d/dy, so horizontal-horizontal picks up A V A^T
    G.topLeftCorner(m, m) = p.g + p.A * V * p.A.transpose();
    G.topRightCorner(m, m) = p.A * V;
    G.bottomLeftCorner(m, m) = V * p.A.transpose();
    G.bottomRightCorner(m, m) = V;
    return G;
}

TMVector apply_J(const BundlePoint& p, const WeightFunction& w, const TMVector& U) {
    const double a = w.a(p.t);
    const double sq = std::sqrt(a);
    const double gXu_h = U.h.dot(p.gy);
    const double gXu_v = U.v.dot(p.gy);
    TMVector out;
    out.at = U.at;
    out.h = -sq * (U.v + gXu_v / (1.0 + p.r) * p.y);
    out.v = (1.0 / sq) * (U.h - gXu_h / (p.r * (1.0 + p.r)) * p.y);
    return out;
}

double kaehler_form(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
                    const TMVector& V) {
    return g_a_eval(p, w, U, apply_J(p, w, V));
}

double lee_coefficient(const WeightFunction& w, double t, LeeCoefficient which) {
    const auto e = w.eval(t);
    const double r = std::sqrt(1.0 + 2.0 * t);
    const double log_term =
        which == LeeCoefficient::half_log_derivative ? e.a1 / (2.0 * e.a) : e.a1 / e.a;
    return log_term - 1.0 / (1.0 + r);
}

double lee_form(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
                LeeCoefficient which) {
    return lee_coefficient(w, p.t, which) * U.v.dot(p.gy);
}

std::vector<Eigen::VectorXd> orthonormal_base_frame(const BundlePoint& p) {
    const int m = p.man->dim();
    const double uu = fiber_norm_sq(p);
    if (!(uu > 1e-24)) throw DegenerateInputError("orthonormal frame requires a nonzero fiber vector");
    std::vector<Eigen::VectorXd> e;
    e.push_back(p.y / std::sqrt(uu));
    std::vector<bool> used(m, false);
    while (static_cast<int>(e.size()) < m) {
        // pick the standard basis vector with the largest residual after
        // projecting out the span so far (skip candidates most parallel to it)
        int best = -1;
        double best_norm = -1.0;
        Eigen::VectorXd best_res;
        for (int c = 0; c < m; ++c) {
            if (used[c]) continue;
            Eigen::VectorXd cand = Eigen::VectorXd::Zero(m);
            cand[c] = 1.0;
            for (const auto& b : e) cand -= b * b.dot(p.g * cand);
            const double n = std::sqrt(cand.dot(p.g * cand));
            if (n > best_norm + 1e-15) {
                best = c;
                best_norm = n;
                best_res = cand;
            }
        }
        used[best] = true;
        e.push_back(best_res / best_norm);
    }
    return e;
}

std::vector<TMVector> adapted_frame(const BundlePoint& p, const WeightFunction& w) {
    const auto e = orthonormal_base_frame(p);
    const int m = p.man->dim();
    const double sq = std::sqrt(w.a(p.t));
    std::vector<TMVector> E;
    E.reserve(2 * m);
    for (int i = 0; i < m; ++i) E.push_back(lift(p, e[i], LiftKind::horizontal));
    E.push_back(lift(p, e[0] / (p.r * sq), LiftKind::vertical));
    for (int k = 1; k < m; ++k) E.push_back(lift(p, e[k] / sq, LiftKind::vertical));
    return E;
}

} // namespace tanbundle
