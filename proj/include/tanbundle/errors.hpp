#pragma once

#include <stdexcept>
#include <string>

namespace tanbundle {

/* Point lies outside the chart (or an FD stencil would leave it). */
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* A user-supplied model violates a structural requirement (e.g. metric not SPD). */
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Geometrically degenerate input (zero fiber vector, degenerate plane). */
struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* API misuse (mismatched anchors, bad argument combinations). */
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Operation intentionally not provided for the requested case. */
struct UnsupportedOperationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Weight function failed a validity requirement (a(t) must stay positive). */
struct WeightValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tanbundle
