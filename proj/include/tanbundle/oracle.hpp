#pragma once

#include <string>
#include <vector>

#include "tanbundle/bundle_metric.hpp"

namespace tanbundle {

/* Brute-force differential geometry on the induced 2m-dimensional coordinate
 * metric of T(M). Nothing here uses the closed forms: every quantity is
 * produced by central finite differences of the metric, Kaehler-form or
 * J-application fields, so it can referee the closed-form module.
 *
 * Points of T(M) are passed as stacked coordinates z = (x; y) of length 2m. */

Eigen::VectorXd pack_z(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/* The 2m x 2m matrix of g_a at z (field form of induced_coordinate_metric). */
Eigen::MatrixXd induced_metric_at_z(const ChartedManifold& man, const WeightFunction& w,
                                    const Eigen::VectorXd& z, const FDConfig& fd = {});

/* Christoffel symbols of the induced metric; result[A][B][C] = Gamma^C_{AB},
 * via 4th-order central differences of the metric field (step h1). */
TensorValue numeric_christoffel_2m(const ChartedManifold& man, const WeightFunction& w,
                                   const Eigen::VectorXd& z, const FDConfig& fd = {});

/* nabla_{d_i} d_j of the induced metric as a 2m-vector (i, j coordinate
 * directions, 0-based). */
Eigen::VectorXd numeric_connection(const ChartedManifold& man, const WeightFunction& w,
                                   const Eigen::VectorXd& z, int i, int j,
                                   const FDConfig& fd = {});

/* Coordinate components of nabla_U W for U the X-lift at z and W the field of
 * Y-lifts (Y held chart-constant): the quantity nabla_tilde computes in
 * closed form. */
Eigen::VectorXd numeric_nabla_lift(const ChartedManifold& man, const WeightFunction& w,
                                   const Eigen::VectorXd& z, LiftKind U_kind, LiftKind W_kind,
                                   const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                   const FDConfig& fd = {});

/* Curvature of the induced metric, same sign convention as the base module:
 * up[A][B][K][L] = L-component of R(d_A, d_B) d_K. Outer derivatives use the
 * wider step h2 over the h1-level Christoffel field. */
TensorValue numeric_riemann_2m(const ChartedManifold& man, const WeightFunction& w,
                               const Eigen::VectorXd& z, const FDConfig& fd = {});

/* (R(U,V)W)^L contraction of a rank-4 curvature against coordinate vectors. */
Eigen::VectorXd contract_riemann(const TensorValue& up, const Eigen::VectorXd& U,
                                 const Eigen::VectorXd& V, const Eigen::VectorXd& W);

/* Scalar curvature of the induced metric (double trace of numeric_riemann_2m). */
double numeric_scalar_2m(const ChartedManifold& man, const WeightFunction& w,
                         const Eigen::VectorXd& z, const FDConfig& fd = {});

/* Exterior derivative of the Kaehler form, coordinate components
 * (dOmega)_{ABC} = d_A Omega_{BC} + d_B Omega_{CA} + d_C Omega_{AB}
 * by central differences of the coordinate Omega-matrix field. */
TensorValue numeric_d_omega(const ChartedManifold& man, const WeightFunction& w,
                            const Eigen::VectorXd& z, const FDConfig& fd = {});

/* (omega wedge Omega)_{ABC} = omega_A Omega_{BC} + omega_B Omega_{CA}
 * + omega_C Omega_{AB}, exact (no differencing), with the Lee-form candidate
 * selectable so the two published coefficients can be adjudicated against
 * numeric_d_omega. */
TensorValue wedge_omega(const ChartedManifold& man, const WeightFunction& w,
                        const Eigen::VectorXd& z,
                        LeeCoefficient which = LeeCoefficient::half_log_derivative,
                        const FDConfig& fd = {});

/* Nijenhuis tensor N(U,V) = [JU,JV] - J[JU,V] - J[U,JV] - [U,V] on lift fields
 * of chart-constant X, Y; brackets via central differences of the J-field
 * application. Returns coordinate components at z. */
Eigen::VectorXd numeric_nijenhuis(const ChartedManifold& man, const WeightFunction& w,
                                  const Eigen::VectorXd& z, LiftKind U_kind, LiftKind V_kind,
                                  const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                  const FDConfig& fd = {});

/* Verdict of one closed-form-vs-oracle comparison over a sample list. */
struct ComparisonReport {
    std::string subject;
    int samples = 0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double scale = 0.0; // largest |oracle component| seen
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;
};

/* Pass iff max_rel_err <= tol, where errors are measured against the largest
 * oracle magnitude; when that magnitude is below 1 the absolute error is
 * compared against tol instead. */
ComparisonReport compare(const std::string& subject,
                         const std::vector<Eigen::VectorXd>& closed_form_values,
                         const std::vector<Eigen::VectorXd>& oracle_values, double tol);

} // namespace tanbundle
