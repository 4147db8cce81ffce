#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tanbundle/base_geometry.hpp"
#include "tanbundle/weights.hpp"

namespace tanbundle {

/* A point (p, u) of T(M) in chart coordinates (x, y), with cached energy
 * density t = g(u,u)/2, r = sqrt(1+2t), and the linear data every bundle
 * operation needs: g(x), g*y and the connection contraction A(i,k) =
 * Gamma^k_{ij} y^j that converts between the adapted frame
 * delta_i = d/dx^i - A(i,k) d/dy^k and raw coordinates. */
struct BundlePoint {
    const ChartedManifold* man = nullptr;
    Eigen::VectorXd x, y;
    double t = 0.0, r = 1.0;
    Eigen::MatrixXd g;
    Eigen::VectorXd gy;
    Eigen::MatrixXd A;
    TensorValue gamma;
};

BundlePoint make_point(const ChartedManifold& man, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y, const FDConfig& fd = {});

enum class LiftKind { horizontal, vertical };

/* Tangent vector to T(M), stored in adapted components (h = horizontal part in
 * the delta-frame, v = vertical part); coordinate components are recoverable
 * exactly through the anchor's A matrix. */
struct TMVector {
    BundlePoint at;
    Eigen::VectorXd h, v;
};

TMVector lift(const BundlePoint& p, const Eigen::VectorXd& X, LiftKind kind);
TMVector tm_vector(const BundlePoint& p, const Eigen::VectorXd& h, const Eigen::VectorXd& v);
TMVector tm_vector_from_coordinates(const BundlePoint& p, const Eigen::VectorXd& dx,
                                    const Eigen::VectorXd& dy);

Eigen::VectorXd coordinate_dx(const TMVector& U); // = h
Eigen::VectorXd coordinate_dy(const TMVector& U); // = v - A^T h
Eigen::VectorXd coordinates(const TMVector& U);   // stacked (dx; dy), length 2m

/* g_a(U,V): horizontal parts pair by g, cross terms vanish, vertical parts pair
 * by a(t) (g(X,Y) + g(X,u) g(Y,u)). */
double g_a_eval(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
                const TMVector& V);

/* The 2m x 2m matrix of g_a in the coordinate frame (d/dx^i, d/dy^j). */
Eigen::MatrixXd induced_coordinate_metric(const BundlePoint& p, const WeightFunction& w);

/* The almost complex structure:
 *   J X^H = (1/sqrt a) (X^V - g(X,u)/(r(1+r)) u^V)
 *   J X^V = -sqrt a   (X^H + g(X,u)/(1+r)   u^H) */
TMVector apply_J(const BundlePoint& p, const WeightFunction& w, const TMVector& U);

/* Kaehler 2-form Omega(U,V) = g_a(U, J V). */
double kaehler_form(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
                    const TMVector& V);

/* The two candidate Lee-form coefficients. Both give omega(X^H) = 0 and
 * omega(X^V) = coeff(t) g(X,u); they differ in the logarithmic-derivative term:
 *   half_log_derivative: coeff = a'/(2a) - 1/(1+r)   (the one dOmega selects)
 *   full_log_derivative: coeff = a'/a   - 1/(1+r)
 * The numeric exterior derivative adjudicates between them (see oracle). */
enum class LeeCoefficient { half_log_derivative, full_log_derivative };

double lee_coefficient(const WeightFunction& w, double t, LeeCoefficient which);
double lee_form(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
                LeeCoefficient which = LeeCoefficient::half_log_derivative);

/* g-orthonormal base frame e_1..e_m with e_1 = u/|u|, completed by
 * Gram-Schmidt over the standard basis with deterministic pivoting. */
std::vector<Eigen::VectorXd> orthonormal_base_frame(const BundlePoint& p);

/* g_a-orthonormal frame on T(M):
 *   E_i     = e_i^H              (i = 1..m)
 *   E_{m+1} = e_1^V / (r sqrt a)
 *   E_{m+k} = e_k^V / sqrt a     (k = 2..m) */
std::vector<TMVector> adapted_frame(const BundlePoint& p, const WeightFunction& w);

} // namespace tanbundle
