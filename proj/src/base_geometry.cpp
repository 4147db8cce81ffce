#include "tanbundle/base_geometry.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "tanbundle/errors.hpp"

namespace tanbundle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd conformal_metric(double c, int m, const Eigen::VectorXd& x) {
    const double f = 1.0 / (1.0 + c * x.squaredNorm() / 4.0);
    return (f * f) * Eigen::MatrixXd::Identity(m, m);
}

void check_in_domain(const ChartedManifold& man, const Eigen::VectorXd& x, double margin) {
    if (x.size() != man.dim()) throw UsageError("point dimension does not match manifold");
    const double bound = man.is_space_form() ? man.valid_radius() : man.chart_radius();
    if (!(x.norm() + margin < bound))
        throw DomainError(margin > 0.0 ? "finite-difference stencil leaves the chart"
                                       : "point outside the chart domain");
}

} // namespace

ChartedManifold ChartedManifold::space_form(double c, int m) {
    if (m < 1) throw UsageError("manifold dimension must be positive");
    ChartedManifold man;
    man.m_ = m;
    man.c_ = c;
    man.metric_fn_ = [c, m](const Eigen::VectorXd& x) { return conformal_metric(c, m, x); };
    man.chart_radius_ = c < 0.0 ? std::min(1.0, 1.0 / std::sqrt(-c)) : 1.0;
    man.valid_radius_ = c < 0.0 ? 2.0 / std::sqrt(-c) : kInf;
    if (c == 0.0)
        man.name_ = "euclidean";
    else if (c > 0.0)
        man.name_ = "sphere(c=" + std::to_string(c) + ")";
    else
        man.name_ = "hyperbolic(c=" + std::to_string(c) + ")";
    return man;
}

ChartedManifold ChartedManifold::euclidean(int m) { return space_form(0.0, m); }

ChartedManifold ChartedManifold::sphere(double c, int m) {
    if (!(c > 0.0)) throw UsageError("sphere preset requires c > 0");
    return space_form(c, m);
}

ChartedManifold ChartedManifold::hyperbolic(double c, int m) {
    if (!(c < 0.0)) throw UsageError("hyperbolic preset requires c < 0");
    return space_form(c, m);
}

ChartedManifold ChartedManifold::custom(int m, MetricFn fn, double chart_radius, std::string name) {
    if (m < 1) throw UsageError("manifold dimension must be positive");
    if (!(chart_radius > 0.0)) throw UsageError("chart radius must be positive");
    if (!fn) throw UsageError("custom manifold needs a metric function");
    ChartedManifold man;
    man.m_ = m;
    man.metric_fn_ = std::move(fn);
    man.chart_radius_ = chart_radius;
    man.valid_radius_ = chart_radius;
    man.name_ = std::move(name);
    return man;
}

double ChartedManifold::space_form_c() const {
    if (!c_) throw UsageError("manifold has no space-form model");
    return *c_;
}

Eigen::MatrixXd metric_at(const ChartedManifold& man, const Eigen::VectorXd& x) {
    check_in_domain(man, x, 0.0);
    Eigen::MatrixXd g = man.metric_fn()(x);
    if (g.rows() != man.dim() || g.cols() != man.dim())
        throw ModelError("metric function returned a matrix of the wrong size");
    if (!g.isApprox(g.transpose(), 1e-12)) throw ModelError("metric is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) throw ModelError("metric is not positive definite");
    return g;
}

TensorValue christoffel_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                           const FDConfig& fd, bool force_numeric) {
    const int m = man.dim();
    TensorValue gamma({m, m, m},
                      {Variance::covariant, Variance::covariant, Variance::contravariant});
    gamma.declare_symmetric(0, 1);

    if (man.is_space_form() && !force_numeric) {
        check_in_domain(man, x, 0.0);
        const double c = man.space_form_c();
        const double f = 1.0 / (1.0 + c * x.squaredNorm() / 4.0);
        // conformal chart: Gamma^k_{ij} = -(c/2) f (delta_ik x_j + delta_jk x_i - delta_ij x_k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    gamma.at3(i, j, k) = -(c / 2.0) * f *
                                         ((i == k ? x[j] : 0.0) + (j == k ? x[i] : 0.0) -
                                          (i == j ? x[k] : 0.0));
        return gamma;
    }

    check_in_domain(man, x, 2.0 * fd.h1);
    // dg[l](i,j) = d_l g_ij
    std::vector<Eigen::MatrixXd> dg(m);
    for (int l = 0; l < m; ++l) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
        e[l] = 1.0;
        dg[l] = fd_derivative([&](double s) -> Eigen::MatrixXd { return man.metric_fn()(x + s * e); },
                              fd.h1);
    }
    const Eigen::MatrixXd ginv = metric_at(man, x).inverse();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                double s = 0.0;
                for (int l = 0; l < m; ++l)
                    s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                gamma.at3(i, j, k) = 0.5 * s;
            }
    return gamma;
}

RiemannValue riemann_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                        const FDConfig& fd, bool force_numeric) {
    const int m = man.dim();
    TensorValue up({m, m, m, m}, {Variance::covariant, Variance::covariant, Variance::covariant,
                                  Variance::contravariant});
    TensorValue low({m, m, m, m}, {Variance::covariant, Variance::covariant, Variance::covariant,
                                   Variance::covariant});

    const Eigen::MatrixXd g = metric_at(man, x);

    if (man.is_space_form() && !force_numeric) {
        const double c = man.space_form_c();
        // R(X,Y)Z = c (g(Y,Z) X - g(X,Z) Y)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                        up.at4(i, j, k, l) =
                            c * (g(j, k) * (i == l ? 1.0 : 0.0) - g(i, k) * (j == l ? 1.0 : 0.0));
    } else {
        check_in_domain(man, x, 2.0 * fd.h1 + 2.0 * fd.h2);
        // dgam[l][i][j][k] = d_l Gamma^k_{ij}
        std::vector<TensorValue> dgam;
        dgam.reserve(m);
        for (int l = 0; l < m; ++l) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
            e[l] = 1.0;
            TensorValue d({m, m, m},
                          {Variance::covariant, Variance::covariant, Variance::contravariant});
            TensorValue gm2 = christoffel_at(man, x - 2.0 * fd.h2 * e, fd, force_numeric);
            TensorValue gm1 = christoffel_at(man, x - fd.h2 * e, fd, force_numeric);
            TensorValue gp1 = christoffel_at(man, x + fd.h2 * e, fd, force_numeric);
            TensorValue gp2 = christoffel_at(man, x + 2.0 * fd.h2 * e, fd, force_numeric);
            for (std::size_t q = 0; q < d.data().size(); ++q)
                d.data()[q] = (gm2.data()[q] - 8.0 * gm1.data()[q] + 8.0 * gp1.data()[q] -
                               gp2.data()[q]) /
                              (12.0 * fd.h2);
            dgam.push_back(std::move(d));
        }
        TensorValue gam = christoffel_at(man, x, fd, force_numeric);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        double v = dgam[i].at3(j, k, l) - dgam[j].at3(i, k, l);
                        for (int e = 0; e < m; ++e)
                            v += gam.at3(j, k, e) * gam.at3(i, e, l) -
                                 gam.at3(i, k, e) * gam.at3(j, e, l);
                        up.at4(i, j, k, l) = v;
                    }
    }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    double v = 0.0;
                    for (int s = 0; s < m; ++s) v += g(l, s) * up.at4(i, j, k, s);
                    low.at4(i, j, k, l) = v;
                }
    return {std::move(up), std::move(low)};
}

TensorValue nabla_riemann_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                             const FDConfig& fd, bool force_numeric) {
    const int m = man.dim();
    TensorValue nr({m, m, m, m, m},
                   {Variance::covariant, Variance::covariant, Variance::covariant,
                    Variance::covariant, Variance::contravariant});

    if (man.is_space_form() && !force_numeric) {
        check_in_domain(man, x, 0.0);
        return nr; // space forms are locally symmetric: exact zeros
    }

    check_in_domain(man, x, 2.0 * fd.h1 + 4.0 * fd.h2);
    // dR[e][i][j][k][l] = d_e (R^l_{ijk})
    for (int e = 0; e < m; ++e) {
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(m);
        dir[e] = 1.0;
        TensorValue rm2 = riemann_at(man, x - 2.0 * fd.h2 * dir, fd, force_numeric).up;
        TensorValue rm1 = riemann_at(man, x - fd.h2 * dir, fd, force_numeric).up;
        TensorValue rp1 = riemann_at(man, x + fd.h2 * dir, fd, force_numeric).up;
        TensorValue rp2 = riemann_at(man, x + 2.0 * fd.h2 * dir, fd, force_numeric).up;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                        nr.at5(e, i, j, k, l) =
                            (rm2.at4(i, j, k, l) - 8.0 * rm1.at4(i, j, k, l) +
                             8.0 * rp1.at4(i, j, k, l) - rp2.at4(i, j, k, l)) /
                            (12.0 * fd.h2);
    }
    const TensorValue gam = christoffel_at(man, x, fd, force_numeric);
    const TensorValue R = riemann_at(man, x, fd, force_numeric).up;
    for (int e = 0; e < m; ++e)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        double v = nr.at5(e, i, j, k, l);
                        for (int s = 0; s < m; ++s)
                            v += gam.at3(e, s, l) * R.at4(i, j, k, s) -
                                 gam.at3(e, i, s) * R.at4(s, j, k, l) -
                                 gam.at3(e, j, s) * R.at4(i, s, k, l) -
                                 gam.at3(e, k, s) * R.at4(i, j, s, l);
                        nr.at5(e, i, j, k, l) = v;
                    }
    return nr;
}

double sectional_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const FDConfig& fd) {
    const Eigen::MatrixXd g = metric_at(man, x);
    const double q = (X.dot(g * X)) * (Y.dot(g * Y)) - std::pow(X.dot(g * Y), 2);
    const double scale = std::max(1.0, X.dot(g * X) * Y.dot(g * Y));
    if (!(q > 1e-12 * scale)) throw DegenerateInputError("degenerate plane for sectional curvature");
    const TensorValue low = riemann_at(man, x, fd).low;
    const int m = man.dim();
    double num = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    num += low.at4(i, j, k, l) * X[i] * Y[j] * Y[k] * X[l];
    return num / q;
}

double scalar_at(const ChartedManifold& man, const Eigen::VectorXd& x, const FDConfig& fd) {
    const int m = man.dim();
    if (man.is_space_form()) {
        check_in_domain(man, x, 0.0);
        return static_cast<double>(m) * (m - 1) * man.space_form_c();
    }
    const TensorValue up = riemann_at(man, x, fd).up;
    const Eigen::MatrixXd ginv = metric_at(man, x).inverse();
    double s = 0.0;
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            double ric = 0.0;
            for (int a = 0; a < m; ++a) ric += up.at4(a, j, k, a);
            s += ginv(j, k) * ric;
        }
    return s;
}

} // namespace tanbundle
