#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace featgraph {

// Dense row-major matrix of doubles. Small and value-semantic; the
// matrices in this library are n_rules x n_features or
// n_features x n_features.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }

    double sum() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    double row_sum(std::size_t r) const {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
        return s;
    }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw std::runtime_error("frobenius_distance: shape mismatch");
    double sq = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const double d = a(r, c) - b(r, c);
            sq += d * d;
        }
    return std::sqrt(sq);
}

}  // namespace featgraph
