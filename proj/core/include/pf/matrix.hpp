#ifndef PF_MATRIX_HPP
#define PF_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace pf {

// Dense row-major matrix, just enough for small probability tables.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::vector<double>& data() { return d_; }
    const std::vector<double>& data() const { return d_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<double> d_;
};

// Rank-3 tensor indexed (i, j, k), row-major in k.
class Tensor3 {
public:
    Tensor3() : n1_(0), n2_(0), n3_(0) {}
    Tensor3(std::size_t n1, std::size_t n2, std::size_t n3, double fill = 0.0)
        : n1_(n1), n2_(n2), n3_(n3), d_(n1 * n2 * n3, fill) {}

    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return d_[(i * n2_ + j) * n3_ + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return d_[(i * n2_ + j) * n3_ + k];
    }

    std::size_t dim1() const { return n1_; }
    std::size_t dim2() const { return n2_; }
    std::size_t dim3() const { return n3_; }

    std::vector<double>& data() { return d_; }
    const std::vector<double>& data() const { return d_; }

    bool operator==(const Tensor3&) const = default;

private:
    std::size_t n1_, n2_, n3_;
    std::vector<double> d_;
};

}  // namespace pf

#endif  // PF_MATRIX_HPP
