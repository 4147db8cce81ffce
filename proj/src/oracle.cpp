#include "tanbundle/oracle.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "tanbundle/errors.hpp"

namespace tanbundle {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_z(const ChartedManifold& man, const VectorXd& z) {
    if (z.size() != 2 * man.dim())
        throw UsageError("oracle point must have 2m stacked coordinates");
}

void check_stencil(const ChartedManifold& man, const VectorXd& z, double margin) {
    const int m = man.dim();
    const double bound = man.is_space_form() ? man.valid_radius() : man.chart_radius();
    if (!(z.head(m).norm() + margin < bound))
        throw DomainError("finite-difference stencil leaves the chart");
}

BundlePoint point_of(const ChartedManifold& man, const VectorXd& z, const FDConfig& fd) {
    const int m = man.dim();
    return make_point(man, z.head(m), z.tail(m), fd);
}

/* d/dz^A of a matrix- or vector-valued field, 4th-order central, step h. */
template <class F>
auto partial(F&& field, const VectorXd& z, int A, double h) {
    VectorXd e = VectorXd::Zero(z.size());
    e[A] = 1.0;
    return fd_derivative([&](double s) { return field(z + s * e); }, h);
}

/* Coordinate matrix of the Kaehler form: Omega_{AB} = (G J)_{AB} where J's
 * columns are the coordinate images of the basis vectors. */
MatrixXd omega_matrix(const ChartedManifold& man, const WeightFunction& w, const VectorXd& z,
                      const FDConfig& fd) {
    const int n = static_cast<int>(z.size());
    const BundlePoint p = point_of(man, z, fd);
    const MatrixXd G = induced_coordinate_metric(p, w);
    MatrixXd Jmat(n, n);
    for (int B = 0; B < n; ++B) {
        VectorXd e = VectorXd::Zero(n);
        e[B] = 1.0;
        const int m = n / 2;
        const TMVector JB =
            apply_J(p, w, tm_vector_from_coordinates(p, e.head(m), e.tail(m)));
        Jmat.col(B) = coordinates(JB);
    }
    return G * Jmat;
}

/* Coordinate components of the lift field of a chart-constant base vector. */
VectorXd lift_coordinates(const ChartedManifold& man, const VectorXd& z, LiftKind kind,
                          const VectorXd& X, const FDConfig& fd) {
    const BundlePoint p = point_of(man, z, fd);
    return coordinates(lift(p, X, kind));
}

} // namespace

VectorXd pack_z(const VectorXd& x, const VectorXd& y) {
    if (x.size() != y.size()) throw UsageError("base and fiber coordinates must match in size");
    VectorXd z(2 * x.size());
    z << x, y;
    return z;
}

MatrixXd induced_metric_at_z(const ChartedManifold& man, const WeightFunction& w,
                             const VectorXd& z, const FDConfig& fd) {
    check_z(man, z);
    return induced_coordinate_metric(point_of(man, z, fd), w);
}

TensorValue numeric_christoffel_2m(const ChartedManifold& man, const WeightFunction& w,
                                   const VectorXd& z, const FDConfig& fd) {
    check_z(man, z);
    check_stencil(man, z, 2.0 * fd.h1);
    const int n = static_cast<int>(z.size());
    std::vector<MatrixXd> dG(n);
    for (int A = 0; A < n; ++A)
        dG[A] = partial(
            [&](const VectorXd& zz) { return induced_metric_at_z(man, w, zz, fd); }, z, A, fd.h1);
    const MatrixXd Ginv = induced_metric_at_z(man, w, z, fd).inverse();
    TensorValue gam({n, n, n},
                    {Variance::covariant, Variance::covariant, Variance::contravariant});
    gam.declare_symmetric(0, 1);
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C) {
                double s = 0.0;
                for (int D = 0; D < n; ++D)
                    s += Ginv(C, D) * (dG[A](B, D) + dG[B](A, D) - dG[D](A, B));
                gam.at3(A, B, C) = 0.5 * s;
            }
    return gam;
}

VectorXd numeric_connection(const ChartedManifold& man, const WeightFunction& w,
                            const VectorXd& z, int i, int j, const FDConfig& fd) {
    check_z(man, z);
    const int n = static_cast<int>(z.size());
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw UsageError("coordinate direction out of range");
    const TensorValue gam = numeric_christoffel_2m(man, w, z, fd);
    VectorXd out(n);
    for (int C = 0; C < n; ++C) out[C] = gam.at3(i, j, C);
    return out;
}

VectorXd numeric_nabla_lift(const ChartedManifold& man, const WeightFunction& w,
                            const VectorXd& z, LiftKind U_kind, LiftKind W_kind,
                            const VectorXd& X, const VectorXd& Y, const FDConfig& fd) {
    check_z(man, z);
    check_stencil(man, z, 2.0 * fd.h1);
    const int n = static_cast<int>(z.size());
    const VectorXd Uc = lift_coordinates(man, z, U_kind, X, fd);
    const VectorXd Wc = lift_coordinates(man, z, W_kind, Y, fd);
    VectorXd out = VectorXd::Zero(n);
    for (int A = 0; A < n; ++A) {
        if (Uc[A] == 0.0) continue;
        const VectorXd dW = partial(
            [&](const VectorXd& zz) { return lift_coordinates(man, zz, W_kind, Y, fd); }, z, A,
            fd.h1);
        out += Uc[A] * dW;
    }
    const TensorValue gam = numeric_christoffel_2m(man, w, z, fd);
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B) {
            const double uw = Uc[A] * Wc[B];
            if (uw == 0.0) continue;
            for (int C = 0; C < n; ++C) out[C] += gam.at3(A, B, C) * uw;
        }
    return out;
}

TensorValue numeric_riemann_2m(const ChartedManifold& man, const WeightFunction& w,
                               const VectorXd& z, const FDConfig& fd) {
    check_z(man, z);
    check_stencil(man, z, 2.0 * fd.h1 + 2.0 * fd.h2);
    const int n = static_cast<int>(z.size());
    // dgam[L][A][B][C] = d_L Gamma^C_{AB}
    std::vector<TensorValue> dgam;
    dgam.reserve(n);
    for (int L = 0; L < n; ++L) {
        VectorXd e = VectorXd::Zero(n);
        e[L] = 1.0;
        TensorValue d({n, n, n},
                      {Variance::covariant, Variance::covariant, Variance::contravariant});
        const TensorValue gm2 = numeric_christoffel_2m(man, w, z - 2.0 * fd.h2 * e, fd);
        const TensorValue gm1 = numeric_christoffel_2m(man, w, z - fd.h2 * e, fd);
        const TensorValue gp1 = numeric_christoffel_2m(man, w, z + fd.h2 * e, fd);
        const TensorValue gp2 = numeric_christoffel_2m(man, w, z + 2.0 * fd.h2 * e, fd);
        for (std::size_t q = 0; q < d.data().size(); ++q)
            d.data()[q] =
                (gm2.data()[q] - 8.0 * gm1.data()[q] + 8.0 * gp1.data()[q] - gp2.data()[q]) /
                (12.0 * fd.h2);
        dgam.push_back(std::move(d));
    }
    const TensorValue gam = numeric_christoffel_2m(man, w, z, fd);
    TensorValue up({n, n, n, n}, {Variance::covariant, Variance::covariant, Variance::covariant,
                                  Variance::contravariant});
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int K = 0; K < n; ++K)
                for (int L = 0; L < n; ++L) {
                    double v = dgam[A].at3(B, K, L) - dgam[B].at3(A, K, L);
                    for (int S = 0; S < n; ++S)
                        v += gam.at3(B, K, S) * gam.at3(A, S, L) -
                             gam.at3(A, K, S) * gam.at3(B, S, L);
                    up.at4(A, B, K, L) = v;
                }
    return up;
}

VectorXd contract_riemann(const TensorValue& up, const VectorXd& U, const VectorXd& V,
                          const VectorXd& W) {
    const int n = static_cast<int>(U.size());
    VectorXd out = VectorXd::Zero(n);
    for (int A = 0; A < n; ++A) {
        if (U[A] == 0.0) continue;
        for (int B = 0; B < n; ++B) {
            const double uv = U[A] * V[B];
            if (uv == 0.0) continue;
            for (int K = 0; K < n; ++K) {
                const double uvw = uv * W[K];
                if (uvw == 0.0) continue;
                for (int L = 0; L < n; ++L) out[L] += up.at4(A, B, K, L) * uvw;
            }
        }
    }
    return out;
}

double numeric_scalar_2m(const ChartedManifold& man, const WeightFunction& w, const VectorXd& z,
                         const FDConfig& fd) {
    const TensorValue up = numeric_riemann_2m(man, w, z, fd);
    const int n = static_cast<int>(z.size());
    const MatrixXd Ginv = induced_metric_at_z(man, w, z, fd).inverse();
    double s = 0.0;
    for (int B = 0; B < n; ++B)
        for (int K = 0; K < n; ++K) {
            double ric = 0.0;
            for (int A = 0; A < n; ++A) ric += up.at4(A, B, K, A);
            s += Ginv(B, K) * ric;
        }
    return s;
}

TensorValue numeric_d_omega(const ChartedManifold& man, const WeightFunction& w,
                            const VectorXd& z, const FDConfig& fd) {
    check_z(man, z);
    check_stencil(man, z, 2.0 * fd.h1);
    const int n = static_cast<int>(z.size());
    std::vector<MatrixXd> dO(n);
    for (int A = 0; A < n; ++A)
        dO[A] =
            partial([&](const VectorXd& zz) { return omega_matrix(man, w, zz, fd); }, z, A, fd.h1);
    TensorValue out({n, n, n},
                    {Variance::covariant, Variance::covariant, Variance::covariant});
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C)
                out.at3(A, B, C) = dO[A](B, C) + dO[B](C, A) + dO[C](A, B);
    return out;
}

TensorValue wedge_omega(const ChartedManifold& man, const WeightFunction& w, const VectorXd& z,
                        LeeCoefficient which, const FDConfig& fd) {
    check_z(man, z);
    const int n = static_cast<int>(z.size());
    const int m = n / 2;
    const BundlePoint p = point_of(man, z, fd);
    const MatrixXd O = omega_matrix(man, w, z, fd);
    VectorXd om(n);
    for (int A = 0; A < n; ++A) {
        VectorXd e = VectorXd::Zero(n);
        e[A] = 1.0;
        om[A] = lee_form(p, w, tm_vector_from_coordinates(p, e.head(m), e.tail(m)), which);
    }
    TensorValue out({n, n, n},
                    {Variance::covariant, Variance::covariant, Variance::covariant});
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B)
            for (int C = 0; C < n; ++C)
                out.at3(A, B, C) = om[A] * O(B, C) + om[B] * O(C, A) + om[C] * O(A, B);
    return out;
}

VectorXd numeric_nijenhuis(const ChartedManifold& man, const WeightFunction& w, const VectorXd& z,
                           LiftKind U_kind, LiftKind V_kind, const VectorXd& X, const VectorXd& Y,
                           const FDConfig& fd) {
    check_z(man, z);
    check_stencil(man, z, 2.0 * fd.h1);
    const int n = static_cast<int>(z.size());
    const int m = n / 2;

    const auto Ufield = [&](const VectorXd& zz) {
        return lift_coordinates(man, zz, U_kind, X, fd);
    };
    const auto Vfield = [&](const VectorXd& zz) {
        return lift_coordinates(man, zz, V_kind, Y, fd);
    };
    const auto Jof = [&](const VectorXd& zz, const VectorXd& vec) {
        const BundlePoint pp = point_of(man, zz, fd);
        return coordinates(
            apply_J(pp, w, tm_vector_from_coordinates(pp, vec.head(m), vec.tail(m))));
    };
    const auto JUfield = [&](const VectorXd& zz) { return Jof(zz, Ufield(zz)); };
    const auto JVfield = [&](const VectorXd& zz) { return Jof(zz, Vfield(zz)); };

    // jac(A, C) = d_A f^C
    const auto jacobian = [&](const auto& f) {
        MatrixXd J(n, n);
        for (int A = 0; A < n; ++A) J.row(A) = partial(f, z, A, fd.h1).transpose();
        return J;
    };
    const VectorXd u0 = Ufield(z), v0 = Vfield(z), ju0 = JUfield(z), jv0 = JVfield(z);
    const MatrixXd dU = jacobian(Ufield), dV = jacobian(Vfield), dJU = jacobian(JUfield),
                   dJV = jacobian(JVfield);

    const auto lie = [&](const VectorXd& f, const MatrixXd& df, const VectorXd& g,
                         const MatrixXd& dg) -> VectorXd {
        VectorXd out = VectorXd::Zero(n);
        for (int A = 0; A < n; ++A)
            out += f[A] * dg.row(A).transpose() - g[A] * df.row(A).transpose();
        return out;
    };

    const VectorXd term1 = lie(ju0, dJU, jv0, dJV);
    const VectorXd term2 = Jof(z, lie(ju0, dJU, v0, dV));
    const VectorXd term3 = Jof(z, lie(u0, dU, jv0, dJV));
    const VectorXd term4 = lie(u0, dU, v0, dV);
    return term1 - term2 - term3 - term4;
}

ComparisonReport compare(const std::string& subject,
                         const std::vector<VectorXd>& closed_form_values,
                         const std::vector<VectorXd>& oracle_values, double tol) {
    if (closed_form_values.size() != oracle_values.size())
        throw UsageError("compare: sample lists differ in length");
    ComparisonReport rep;
    rep.subject = subject;
    rep.samples = static_cast<int>(closed_form_values.size());
    rep.tolerance = tol;
    for (std::size_t s = 0; s < closed_form_values.size(); ++s) {
        const VectorXd& cf = closed_form_values[s];
        const VectorXd& orc = oracle_values[s];
        if (cf.size() != orc.size())
            throw UsageError("compare: sample vectors differ in length");
        for (Eigen::Index k = 0; k < cf.size(); ++k) {
            rep.max_abs_err = std::max(rep.max_abs_err, std::abs(cf[k] - orc[k]));
            rep.scale = std::max(rep.scale, std::abs(orc[k]));
        }
    }
    rep.max_rel_err = rep.scale > 0.0 ? rep.max_abs_err / rep.scale : 0.0;
    rep.pass = rep.scale >= 1.0 ? rep.max_rel_err <= tol : rep.max_abs_err <= tol;
    return rep;
}

} // namespace tanbundle
