#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace tanbundle {

/* Deterministic RNG with a platform-independent uniform mapping: values depend
 * only on the seed and the draw order, never on library internals. */
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    /* uniform double in [0, 1) built from the top 53 bits */
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Eigen::VectorXd uniform_vector(int n, double lo, double hi) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 eng_;
};

/* Per-sample seed: global seed XOR sample index, so results are independent of
 * the order in which samples are evaluated (and of the worker that runs them). */
inline std::uint64_t sample_seed(std::uint64_t global_seed, std::uint64_t sample_index) {
    return global_seed ^ sample_index;
}

} // namespace tanbundle
