#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace tanbundle {

enum class Variance { covariant, contravariant };

/* Dense multi-index array of real components with per-index variance metadata.
 * Used for Christoffel symbols, curvature tensors, their covariant derivatives
 * and differential forms; extents are small (m or 2m), storage row-major. */
class TensorValue {
public:
    TensorValue() = default;

    TensorValue(std::vector<int> shape, std::vector<Variance> variance);

    int rank() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    const std::vector<Variance>& variance() const { return variance_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    double& at(std::initializer_list<int> idx) { return data_[offset(idx)]; }
    double at(std::initializer_list<int> idx) const { return data_[offset(idx)]; }

    /* rank-specific fast accessors */
    double& at3(int i, int j, int k) { return data_[(static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k]; }
    double at3(int i, int j, int k) const { return data_[(static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k]; }
    double& at4(int i, int j, int k, int l) {
        return data_[((static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
    }
    double at4(int i, int j, int k, int l) const {
        return data_[((static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
    }
    double& at5(int e, int i, int j, int k, int l) {
        return data_[(((static_cast<std::size_t>(e) * shape_[1] + i) * shape_[2] + j) * shape_[3] + k) * shape_[4] + l];
    }
    double at5(int e, int i, int j, int k, int l) const {
        return data_[(((static_cast<std::size_t>(e) * shape_[1] + i) * shape_[2] + j) * shape_[3] + k) * shape_[4] + l];
    }

    double max_abs() const;

    /* Declare that the tensor is symmetric under swapping index positions (i, j);
     * symmetry_holds() verifies the declared pairs exactly as stored. */
    void declare_symmetric(int i, int j) { sym_.emplace_back(i, j); }
    const std::vector<std::pair<int, int>>& symmetric_pairs() const { return sym_; }
    bool symmetry_holds() const;

private:
    std::size_t offset(std::initializer_list<int> idx) const;

    std::vector<int> shape_;
    std::vector<Variance> variance_;
    std::vector<double> data_;
    std::vector<std::pair<int, int>> sym_;
};

} // namespace tanbundle
