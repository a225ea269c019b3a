#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kronkit/dense.hpp"

namespace kronkit {

// Thin SVD with r = min(rows, cols) triplets, sigma descending.
struct SvdResult {
    DenseMatrix u;             // rows x r, orthonormal columns
    std::vector<double> sigma; // descending, non-negative
    DenseMatrix v;             // cols x r, orthonormal columns
};

struct RankTolerance {
    double rel_tol = 1e-10; // measured against sigma_1
};

// Iteration ran out of budget; carries the last iterate so callers can
// fall back or inspect.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, SvdResult last)
        : std::runtime_error(what),
          last_(std::make_shared<SvdResult>(std::move(last))) {}

    const SvdResult& last_iterate() const noexcept { return *last_; }

private:
    std::shared_ptr<const SvdResult> last_;
};

struct DominantTriplet {
    double sigma;
    std::vector<double> u;
    std::vector<double> v;
    std::size_t iterations;
};

// Full one-sided Jacobi SVD. Deterministic: fixed row-cyclic pivot order,
// convergence when every off-diagonal Gram coupling |g_i^T g_j| drops to
// 1e-15 * ||g_i|| ||g_j||, at most 60 sweeps. Wide inputs are factored
// through their transpose. Sign convention: in each right singular vector
// the first entry of largest magnitude is non-negative.
SvdResult jacobi_svd(const DenseMatrix& a);

// Best rank-r approximation plus the Frobenius residual sqrt(sum of the
// trailing sigma^2).
std::pair<SvdResult, double> truncated_svd(const DenseMatrix& a, std::size_t rank);

// Alternating power iteration for the leading triplet, started from the
// normalized all-ones vector (deterministic basis restart if that start
// has no coupling with the row space). Converged when successive sigma
// estimates differ by at most tol * sigma.
DominantTriplet dominant_triplet(const DenseMatrix& a, double tol,
                                 std::size_t max_iter);

// Count of sigma_k > rel_tol * sigma_1; zero spectrum has rank 0.
std::size_t numeric_rank(std::span<const double> sigma, RankTolerance tol = {});

// sigma_max / sigma_min over the full spectrum; nullopt when sigma_min
// is exactly zero.
std::optional<double> cond2(const DenseMatrix& a);

} // namespace kronkit
