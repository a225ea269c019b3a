#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "kronkit/errors.hpp"

namespace kronkit {

// Multiplies two extents, throwing SizeError instead of wrapping around.
inline std::size_t checked_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
        throw SizeError("extent product overflows the index type");
    }
    return a * b;
}

// Dense real matrix, column-major: entry (i, j) lives at i + j*rows.
// Operations never mutate their inputs; results are returned by value.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols);
    // Takes ownership of column-major data. Rejects count mismatches and
    // non-finite entries.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return values_[i + j * rows_];
    }
    double& operator()(std::size_t i, std::size_t j) noexcept {
        return values_[i + j * rows_];
    }

    std::span<const double> values() const noexcept { return values_; }
    const double* data() const noexcept { return values_.data(); }
    double* data() noexcept { return values_.data(); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

// Dense order-d real tensor, column-major linearization (first index fastest).
class DenseTensor {
public:
    explicit DenseTensor(std::vector<std::size_t> dims);
    DenseTensor(std::vector<std::size_t> dims, std::vector<double> values);

    // An order-2 tensor and a matrix share the same storage layout.
    static DenseTensor from_matrix(const DenseMatrix& a);
    DenseMatrix to_matrix() const;

    std::size_t order() const noexcept { return dims_.size(); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    const double* data() const noexcept { return values_.data(); }
    double* data() noexcept { return values_.data(); }

private:
    std::vector<std::size_t> dims_;
    std::vector<double> values_;
};

// Multi-index into Z_{n_1} x ... x Z_{n_d} with its bound vector.
struct MultiIndex {
    std::vector<std::size_t> entries;
    std::vector<std::size_t> bounds;
};

// Column-major ranking: l = sum_k i_k * prod_{j<k} n_j.
std::size_t linearize(const MultiIndex& idx);
MultiIndex delinearize(std::size_t linear, std::vector<std::size_t> bounds);

// vec stacks columns top to bottom; with column-major storage that is the
// storage itself, so the view is free.
inline std::span<const double> vec(const DenseMatrix& a) noexcept {
    return a.values();
}
std::span<const double> vec(DenseMatrix&&) = delete;

DenseMatrix sym(const DenseMatrix& a);
double sgn(double x);

double fro_norm(const DenseMatrix& a) noexcept;
double fro_norm(const DenseTensor& x) noexcept;
double inf_norm(const DenseMatrix& a) noexcept;

// Plumbing shared across the library and its tests.
double norm2(std::span<const double> x) noexcept;
double fro_dist(std::span<const double> a, std::span<const double> b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);
DenseMatrix outer(std::span<const double> u, std::span<const double> v);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double alpha);

} // namespace kronkit
