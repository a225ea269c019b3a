#include "kronkit/nkp.hpp"

#include <cmath>
#include <utility>

#include "kronkit/kron.hpp"
#include "kronkit/rearrange.hpp"

namespace kronkit {

namespace {

constexpr double kPowerTol = 1e-13;
constexpr std::size_t kPowerBudget = 300;

bool is_zero(const DenseMatrix& a) {
    for (double x : a.values()) {
        if (x != 0.0) return false;
    }
    return true;
}

DenseMatrix fold_factor(std::span<const double> column, double scale,
                        std::size_t rows, std::size_t cols) {
    std::vector<double> data(column.size());
    for (std::size_t k = 0; k < column.size(); ++k) data[k] = scale * column[k];
    return DenseMatrix(rows, cols, std::move(data));
}

} // namespace

KronTermList::KronTermList(BlockShape shape, std::vector<KronTerm> terms,
                           std::vector<double> sigmas)
    : shape_(shape), terms_(std::move(terms)), sigmas_(std::move(sigmas)) {
    if (sigmas_.size() != terms_.size()) {
        throw ShapeError("one singular value per term required");
    }
    for (std::size_t k = 0; k + 1 < sigmas_.size(); ++k) {
        if (sigmas_[k + 1] > sigmas_[k]) {
            throw ContractError("term singular values must be descending");
        }
    }
    for (const KronTerm& term : terms_) {
        if (term.left.rows() != shape_.grid_rows || term.left.cols() != shape_.grid_cols ||
            term.right.rows() != shape_.block_rows || term.right.cols() != shape_.block_cols) {
            throw ShapeError("term factor shape mismatch");
        }
    }
}

DenseMatrix KronTermList::materialize() const {
    DenseMatrix sum(shape_.host_rows(), shape_.host_cols());
    for (const KronTerm& term : terms_) {
        sum = add(sum, kron(term.left, term.right));
    }
    return sum;
}

NearestKron nearest_kron(const DenseMatrix& a, const BlockShape& shape) {
    require_consistent(shape, a);
    if (is_zero(a)) {
        throw DegenerateInputError(
            "zero matrix: optimal factors are zero but their scale split is undefined");
    }
    const DenseMatrix t = rearrange(a, shape);

    double sigma;
    std::vector<double> uvec, vvec;
    try {
        DominantTriplet dom = dominant_triplet(t, kPowerTol, kPowerBudget);
        sigma = dom.sigma;
        uvec = std::move(dom.u);
        vvec = std::move(dom.v);
    } catch (const ConvergenceError&) {
        // Slow spectral gap; take the exact route.
        SvdResult full = jacobi_svd(t);
        sigma = full.sigma[0];
        uvec.assign(full.u.data(), full.u.data() + full.u.rows());
        vvec.assign(full.v.data(), full.v.data() + full.v.rows());
    }

    const double scale = std::sqrt(sigma);
    DenseMatrix left = fold_factor(uvec, scale, shape.grid_rows, shape.grid_cols);
    DenseMatrix right = fold_factor(vvec, scale, shape.block_rows, shape.block_cols);
    const double residual = fro_dist(a.values(), kron(left, right).values());
    return NearestKron{std::move(left), std::move(right), residual};
}

KronSumApprox kron_sum_approx(const DenseMatrix& a, const BlockShape& shape,
                              std::size_t rank) {
    require_consistent(shape, a);
    const DenseMatrix t = rearrange(a, shape);
    auto [svd, residual] = truncated_svd(t, rank);

    std::vector<KronTerm> terms;
    terms.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        const double scale = std::sqrt(svd.sigma[k]);
        std::span<const double> uk{svd.u.data() + k * svd.u.rows(), svd.u.rows()};
        std::span<const double> vk{svd.v.data() + k * svd.v.rows(), svd.v.rows()};
        terms.push_back(KronTerm{
            fold_factor(uk, scale, shape.grid_rows, shape.grid_cols),
            fold_factor(vk, scale, shape.block_rows, shape.block_cols)});
    }
    KronTermList list(shape, std::move(terms), std::move(svd.sigma));
    return KronSumApprox{std::move(list), residual};
}

std::size_t kron_rank(const DenseMatrix& a, const BlockShape& shape,
                      RankTolerance tol) {
    const DenseMatrix t = rearrange(a, shape);
    return numeric_rank(jacobi_svd(t).sigma, tol);
}

} // namespace kronkit
