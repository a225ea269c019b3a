#pragma once

#include <span>
#include <vector>

#include "kronkit/block_shape.hpp"
#include "kronkit/dense.hpp"

namespace kronkit {

// Kronecker product: block (i, j) of the mp x nq result is b(i,j) * c.
DenseMatrix kron(const DenseMatrix& b, const DenseMatrix& c);

// kron(b, c) * x without forming the product: vec(c * X * b^T) with X the
// q x n column-major reshape of x.
std::vector<double> kron_matvec(const DenseMatrix& b, const DenseMatrix& c,
                                std::span<const double> x);

// Stacks the p x q blocks of a vertically in column-major grid order
// (block k = i + j*m occupies rows [k*p, (k+1)*p)).
DenseMatrix blockvec(const DenseMatrix& a, const BlockShape& shape);

// Inverse of blockvec: scatters stacked blocks back onto the grid.
DenseMatrix blockmat(const DenseMatrix& v, const BlockShape& shape);

// b (x) c held as its factors; applies and materializes on demand.
class KronOperator {
public:
    KronOperator(DenseMatrix b, DenseMatrix c);

    std::size_t rows() const { return checked_mul(b_.rows(), c_.rows()); }
    std::size_t cols() const { return checked_mul(b_.cols(), c_.cols()); }

    const DenseMatrix& left() const noexcept { return b_; }
    const DenseMatrix& right() const noexcept { return c_; }

    std::vector<double> apply(std::span<const double> x) const;
    DenseMatrix materialize() const;

private:
    DenseMatrix b_;
    DenseMatrix c_;
};

} // namespace kronkit
