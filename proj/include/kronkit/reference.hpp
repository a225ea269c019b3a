#pragma once

#include <span>
#include <vector>

#include "kronkit/block_shape.hpp"
#include "kronkit/dense.hpp"

// Serial reference kernels: the plain-loop statements of what the parallel
// kernels compute. Kept for equivalence tests and the kernels benchmark;
// results must match the parallel versions bit for bit.
namespace kronkit::ref {

DenseMatrix kron(const DenseMatrix& b, const DenseMatrix& c);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);
std::vector<double> kron_matvec(const DenseMatrix& b, const DenseMatrix& c,
                                std::span<const double> x);
DenseMatrix rearrange(const DenseMatrix& a, const BlockShape& shape);
DenseMatrix mode_unfold_matrix(const DenseTensor& x, std::size_t mode);

} // namespace kronkit::ref
