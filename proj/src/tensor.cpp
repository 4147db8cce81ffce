#include "tanbundle/tensor.hpp"

#include <cmath>
#include <numeric>

#include "tanbundle/errors.hpp"

namespace tanbundle {

TensorValue::TensorValue(std::vector<int> shape, std::vector<Variance> variance)
    : shape_(std::move(shape)), variance_(std::move(variance)) {
    if (shape_.size() != variance_.size())
        throw UsageError("TensorValue: shape and variance ranks differ");
    std::size_t n = 1;
    for (int e : shape_) {
        if (e <= 0) throw UsageError("TensorValue: non-positive index extent");
        n *= static_cast<std::size_t>(e);
    }
    data_.assign(n, 0.0);
}

std::size_t TensorValue::offset(std::initializer_list<int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
        throw UsageError("TensorValue: wrong number of indices");
    std::size_t off = 0;
    int pos = 0;
    for (int i : idx) {
        if (i < 0 || i >= shape_[pos]) throw UsageError("TensorValue: index out of range");
        off = off * static_cast<std::size_t>(shape_[pos]) + static_cast<std::size_t>(i);
        ++pos;
    }
    return off;
}

double TensorValue::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool TensorValue::symmetry_holds() const {
    if (sym_.empty()) return true;
    const int r = rank();
    std::vector<int> idx(r, 0);
    const std::size_t n = data_.size();
    for (std::size_t lin = 0; lin < n; ++lin) {
        std::size_t rem = lin;
        for (int p = r - 1; p >= 0; --p) {
            idx[p] = static_cast<int>(rem % static_cast<std::size_t>(shape_[p]));
            rem /= static_cast<std::size_t>(shape_[p]);
        }
        for (auto [a, b] : sym_) {
            std::vector<int> sw = idx;
            std::swap(sw[a], sw[b]);
            std::size_t off = 0;
            for (int p = 0; p < r; ++p)
                off = off * static_cast<std::size_t>(shape_[p]) + static_cast<std::size_t>(sw[p]);
            if (data_[lin] != data_[off]) return false;
        }
    }
    return true;
}

} // namespace tanbundle
