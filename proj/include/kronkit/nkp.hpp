#pragma once

#include <cstddef>
#include <vector>

#include "kronkit/block_shape.hpp"
#include "kronkit/dense.hpp"
#include "kronkit/svd.hpp"

namespace kronkit {

// One term kron(left, right) of a Kronecker sum.
struct KronTerm {
    DenseMatrix left;  // m x n
    DenseMatrix right; // p x q
};

// Ordered sum_k kron(left_k, right_k) together with the singular values
// each term was folded from.
class KronTermList {
public:
    KronTermList(BlockShape shape, std::vector<KronTerm> terms,
                 std::vector<double> sigmas);

    const BlockShape& shape() const noexcept { return shape_; }
    const std::vector<KronTerm>& terms() const noexcept { return terms_; }
    const std::vector<double>& sigmas() const noexcept { return sigmas_; }
    std::size_t rank() const noexcept { return terms_.size(); }

    DenseMatrix materialize() const;

private:
    BlockShape shape_;
    std::vector<KronTerm> terms_;
    std::vector<double> sigmas_;
};

struct NearestKron {
    DenseMatrix left;
    DenseMatrix right;
    double residual; // fro_norm(a - kron(left, right)), recomputed
};

struct KronSumApprox {
    KronTermList terms;
    double residual; // sqrt(sum of trailing sigma^2) of the rearrangement
};

// Frobenius-optimal single Kronecker term, folded from the dominant
// singular triplet of rearrange(a): vec(left) = sqrt(sigma)*u,
// vec(right) = sqrt(sigma)*v. Power iteration fast path with a Jacobi
// fallback when it converges too slowly.
NearestKron nearest_kron(const DenseMatrix& a, const BlockShape& shape);

// r-term generalization via the rank-r truncated SVD of rearrange(a).
KronSumApprox kron_sum_approx(const DenseMatrix& a, const BlockShape& shape,
                              std::size_t rank);

// Minimal number of Kronecker terms reproducing a up to the tolerance:
// the numeric rank of rearrange(a).
std::size_t kron_rank(const DenseMatrix& a, const BlockShape& shape,
                      RankTolerance tol = {});

} // namespace kronkit
