#pragma once

#include <type_traits>
#include <utility>

namespace tanbundle {

/* Finite-difference configuration shared by every numeric path.
 *
 * h1 applies to first derivatives of directly evaluable fields; h2 applies to
 * derivatives of quantities that are themselves finite-difference results
 * (stacked levels), where a larger step keeps round-off noise below truncation. */
struct FDConfig {
    double h1 = 1e-4;
    double h2 = 1e-3;
};

/* 4th-order central difference f'(0) = (f(-2h) - 8 f(-h) + 8 f(h) - f(2h)) / (12 h).
 * The explicit return type forces Eigen expressions to materialize. */
template <class F>
auto fd_derivative(F&& f, double h) -> std::decay_t<decltype(f(0.0))> {
    std::decay_t<decltype(f(0.0))> out =
        (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
    return out;
}

} // namespace tanbundle
