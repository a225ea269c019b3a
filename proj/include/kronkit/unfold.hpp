#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kronkit/dense.hpp"
#include "kronkit/svd.hpp"

namespace kronkit {

// Mode-k matricization: column c holds the mode-k fiber at the multi-index
// delinearize(c) over the remaining dims in ascending mode order.
struct ModeUnfolding {
    std::size_t mode;
    DenseMatrix matrix; // n_k x prod_{j != k} n_j
    std::vector<std::size_t> source_dims;
};

ModeUnfolding mode_unfold(const DenseTensor& x, std::size_t mode);

// Exact inverse: mode_fold(mode_unfold(x, k)) == x bit for bit.
DenseTensor mode_fold(const ModeUnfolding& m);

// Mode-k product: unfold, multiply from the left, fold back with dim k
// replaced by m.rows().
DenseTensor mode_mult(const DenseTensor& x, const DenseMatrix& m, std::size_t mode);

// Tuple (r_1, ..., r_d) of numeric ranks of the mode unfoldings.
std::vector<std::size_t> multilinear_rank(const DenseTensor& x,
                                          RankTolerance tol = {});

struct Hosvd {
    DenseTensor core;                 // r_1 x ... x r_d
    std::vector<DenseMatrix> factors; // n_k x r_k, orthonormal columns
    double error;                     // fro_norm(x - reconstruction)
};

// Sequential truncated higher-order SVD: factor k holds the leading r_k
// left singular vectors of the mode-k unfolding; the core is x multiplied
// by every factor transposed.
Hosvd hosvd(const DenseTensor& x, std::span<const std::size_t> target);

} // namespace kronkit
