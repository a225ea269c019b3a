#pragma once

#include "kronkit/block_shape.hpp"
#include "kronkit/dense.hpp"

namespace kronkit {

// Rearrangement of a block-partitioned matrix: row k = i + j*m of the
// mn x pq result is vec(block(i,j))^T. If a = kron(b, c) the result is
// vec(b) * vec(c)^T, so Kronecker structure becomes rank-1 structure.
DenseMatrix rearrange(const DenseMatrix& a, const BlockShape& shape);

// Unique inverse: rearrange(unrearrange(r, shape), shape) == r.
DenseMatrix unrearrange(const DenseMatrix& r, const BlockShape& shape);

// Order-4 view: tensor entry (s, t, i, j) = a(i*p + s, j*q + t).
DenseTensor matrix_to_tensor4(const DenseMatrix& a, const BlockShape& shape);

} // namespace kronkit
