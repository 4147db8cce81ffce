#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tanbundle/base_geometry.hpp"
#include "tanbundle/weights.hpp"

namespace tanbundle {

/* Tiny arithmetic-expression language used by custom metric and weight files:
 * numeric literals, named variables bound at parse time, operators + - * / ^
 * (^ binds tightest and associates right), unary minus, parentheses, and the
 * functions exp, sqrt, sin, cos. */
class Expr {
public:
    struct Node; // implementation detail, defined in expr.cpp

    Expr() = default;

    static Expr parse(const std::string& text, const std::vector<std::string>& variables);

    double eval(const std::vector<double>& values) const; // one value per variable
    bool valid() const { return root_ != nullptr; }
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/* Custom base manifold from a plain-text file:
 *   dim 2
 *   radius 0.9
 *   g 1 1 = 1 / (1 + x1^2)
 *   g 1 2 = 0
 * `dim` must come first; `radius` sets the chart radius; `g i j = <expr>`
 * lines (1-based indices, variables x1..xm) fill the metric symmetrically,
 * with unspecified entries defaulting to the identity. '#' starts a comment. */
ChartedManifold load_manifold_file(const std::string& path);

/* Custom weight from a plain-text file with all three closed-form lines
 * (variable t):
 *   a  = 1/(1+2*t)
 *   a1 = -2/(1+2*t)^2
 *   a2 = 8/(1+2*t)^3 */
WeightFunction load_weight_file(const std::string& path);

} // namespace tanbundle
