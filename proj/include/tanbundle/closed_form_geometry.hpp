#pragma once

#include <vector>

#include "tanbundle/bundle_metric.hpp"

namespace tanbundle {

/* Closed-form Levi-Civita connection of g_a, split by lift kinds of the two
 * arguments (X, Y are chart-constant vectors on the base; L = a'/(2a)):
 *   HH: (nabla_X Y)^H - 1/2 (R(X,Y)u)^V
 *   HV: (nabla_X Y)^V + a/2 (R(u,Y)X)^H
 *   VH: a/2 (R(u,X)Y)^H
 *   VV: L (g(X,u) Y^V + g(Y,u) X^V) + (1-L)/r^2 g(X,Y) u^V
 *       - L/r^2 g(X,u) g(Y,u) u^V */
enum class LiftPair { HH, HV, VH, VV };

TMVector nabla_tilde(const BundlePoint& p, const WeightFunction& w, LiftPair kind,
                     const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const FDConfig& fd = {});

/* Closed-form curvature tensor of g_a, split by lift kinds of (X, Y, Z). */
enum class CurvatureCase { HHH, HHV, HVH, HVV, VVH, VVV };

TMVector curvature_tilde(const BundlePoint& p, const WeightFunction& w, CurvatureCase which,
                         const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                         const Eigen::VectorXd& Z, const FDConfig& fd = {});

/* Squared parallelogram area: g_a(U,U) g_a(V,V) - g_a(U,V)^2. */
double area_sq(const BundlePoint& p, const WeightFunction& w, const TMVector& U,
               const TMVector& V);

/* Sectional curvatures over the adapted frame {E_A}, classified by pair type:
 *   HH    K(E_i, E_j)      = K(e_i, e_j) - (3a/4) |R(e_i,e_j)u|^2
 *   H_V1  K(E_i, E_{m+1})  = 0
 *   H_Vk  K(E_i, E_{m+k})  = (a/4) |R(u,e_k)e_i|^2
 *   V1_Vk K(E_{m+1},E_{m+k}) = -(F2 + 2t F3)/a
 *   Vk_Vl K(E_{m+k},E_{m+l}) = -F2/a */
enum class PairClass { HH, H_V1, H_Vk, V1_Vk, Vk_Vl };

struct SectionalEntry {
    int A, B; // frame indices, 0-based, A < B
    PairClass cls;
    double value;
};

struct SectionalTable {
    int m = 0;
    std::vector<SectionalEntry> entries;
    double at(int A, int B) const; // UsageError when the pair is absent
};

SectionalTable sectional_table(const BundlePoint& p, const WeightFunction& w,
                               const FDConfig& fd = {});

/* Closed-form Nijenhuis components (vertical-valued):
 *   HH: [obstruction (g(X,u) Y - g(Y,u) X) + R(X,Y)u]^V
 *       with obstruction = (2a - (1+r) a')/(2 a^2 r (1+r))
 *   VV: [-a R(X,Y)u - a/(1+r) g(Y,u) R(X,u)u + a/(1+r) g(X,u) R(Y,u)u
 *        - (a'/(2a) - 1/(1+r)) (g(Y,u) X - g(X,u) Y)]^V
 * The HV case has no published closed form and is intentionally refused;
 * use the numeric oracle for it. */
enum class NijenhuisCase { HH, VV, HV };

TMVector nijenhuis_closed(const BundlePoint& p, const WeightFunction& w, NijenhuisCase which,
                          const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                          const FDConfig& fd = {});

/* Scalar curvature of g_a:
 *   scal~ = scal - (a/2) sum_{i<j} |R(e_i,e_j)u|^2 + (1-m)/a (m F2 + 4t F3)
 * The frame sum is frame-independent; the default uses the deterministic
 * Gram-Schmidt frame (any orthonormal frame at u = 0, where the sum vanishes). */
double scalar_tilde(const BundlePoint& p, const WeightFunction& w, const FDConfig& fd = {});
double scalar_tilde_with_frame(const BundlePoint& p, const WeightFunction& w,
                               const std::vector<Eigen::VectorXd>& e_frame,
                               const FDConfig& fd = {});

} // namespace tanbundle
