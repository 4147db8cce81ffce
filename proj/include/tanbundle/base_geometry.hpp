#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "tanbundle/fd.hpp"
#include "tanbundle/tensor.hpp"

namespace tanbundle {

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/* A base Riemannian manifold given by metric components on a single chart.
 *
 * Space-form presets use the conformal chart g_ij = delta_ij / (1 + c|x|^2/4)^2
 * and carry closed-form Christoffel symbols and curvature; generic (custom)
 * manifolds fall back to finite differences everywhere.
 *
 * chart_radius bounds the region used for sampling and finite-difference
 * stencils; valid_radius is where metric_fn itself is mathematically defined
 * (all of R^m for the c >= 0 presets, |x| < 2/sqrt(-c) for c < 0). */
class ChartedManifold {
public:
    static ChartedManifold euclidean(int m);
    static ChartedManifold sphere(double c, int m);     // requires c > 0
    static ChartedManifold hyperbolic(double c, int m); // requires c < 0
    static ChartedManifold space_form(double c, int m); // any c
    static ChartedManifold custom(int m, MetricFn fn, double chart_radius,
                                  std::string name = "custom");

    int dim() const { return m_; }
    const std::string& name() const { return name_; }
    bool is_space_form() const { return c_.has_value(); }
    double space_form_c() const; // UsageError when generic
    double chart_radius() const { return chart_radius_; }
    double valid_radius() const { return valid_radius_; }
    const MetricFn& metric_fn() const { return metric_fn_; }

private:
    ChartedManifold() = default;

    int m_ = 0;
    MetricFn metric_fn_;
    std::optional<double> c_;
    double chart_radius_ = 0.0;
    double valid_radius_ = 0.0;
    std::string name_;
};

/* g_ij(x); checks the domain and that the result is symmetric positive definite. */
Eigen::MatrixXd metric_at(const ChartedManifold& man, const Eigen::VectorXd& x);

/* Christoffel symbols; result[i][j][k] = Gamma^k_{ij}, symmetric in (i, j).
 * force_numeric bypasses the closed form of presets (used for cross-checks). */
TensorValue christoffel_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                           const FDConfig& fd = {}, bool force_numeric = false);

/* Curvature, sign convention R(X,Y)Z = DX DY Z - DY DX Z - D[X,Y] Z.
 * up[i][j][k][l]  = l-component of R(d_i, d_j) d_k
 * low[i][j][k][l] = g(R(d_i, d_j) d_k, d_l) */
struct RiemannValue {
    TensorValue up;
    TensorValue low;
};
RiemannValue riemann_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                        const FDConfig& fd = {}, bool force_numeric = false);

/* Covariant derivative of curvature; result[e][i][j][k][l] = l-component of
 * (D_e R)(d_i, d_j) d_k. Exact zeros for space-form presets. */
TensorValue nabla_riemann_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                             const FDConfig& fd = {}, bool force_numeric = false);

/* K(X,Y) = g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2). */
double sectional_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                    const FDConfig& fd = {});

/* Scalar curvature at x (double trace of curvature). */
double scalar_at(const ChartedManifold& man, const Eigen::VectorXd& x,
                 const FDConfig& fd = {});

} // namespace tanbundle
