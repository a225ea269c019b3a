#include "kronkit/unfold.hpp"

#include <cstdint>

#include "kronkit/errors.hpp"

namespace kronkit {

namespace {

// prod_{j < mode} n_j; mode-k fibers stride by this in the linearization.
std::size_t mode_stride(const std::vector<std::size_t>& dims, std::size_t mode) {
    std::size_t stride = 1;
    for (std::size_t j = 0; j < mode; ++j) stride = checked_mul(stride, dims[j]);
    return stride;
}

} // namespace

ModeUnfolding mode_unfold(const DenseTensor& x, std::size_t mode) {
    const auto& dims = x.dims();
    if (mode >= dims.size()) throw RangeError("mode out of range");
    const std::size_t nk = dims[mode];
    const std::size_t stride = mode_stride(dims, mode);
    const std::size_t rest = x.size() / nk;
    const std::size_t outer = rest / stride; // prod_{j > mode} n_j
    DenseMatrix m(nk, rest);
    // Column c = lo + hi*stride gathers the fiber at offset lo + hi*stride*nk.
#pragma omp parallel for schedule(static)
    for (std::int64_t hi = 0; hi < static_cast<std::int64_t>(outer); ++hi) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t c = lo + static_cast<std::size_t>(hi) * stride;
            const double* src = x.data() + lo + static_cast<std::size_t>(hi) * stride * nk;
            double* dst = m.data() + c * nk;
            for (std::size_t r = 0; r < nk; ++r) {
                dst[r] = src[r * stride];
            }
        }
    }
    return ModeUnfolding{mode, std::move(m), dims};
}

DenseTensor mode_fold(const ModeUnfolding& m) {
    const auto& dims = m.source_dims;
    if (m.mode >= dims.size()) throw ShapeError("mode exceeds tensor order");
    std::size_t total = 1;
    for (std::size_t n : dims) {
        if (n == 0) throw ShapeError("tensor extents must be positive");
        total = checked_mul(total, n);
    }
    const std::size_t nk = dims[m.mode];
    if (m.matrix.rows() != nk || m.matrix.cols() != total / nk) {
        throw ShapeError("unfolding matrix does not match the source dims");
    }
    const std::size_t stride = mode_stride(dims, m.mode);
    const std::size_t outer = (total / nk) / stride;
    DenseTensor x(dims);
#pragma omp parallel for schedule(static)
    for (std::int64_t hi = 0; hi < static_cast<std::int64_t>(outer); ++hi) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t c = lo + static_cast<std::size_t>(hi) * stride;
            const double* src = m.matrix.data() + c * nk;
            double* dst = x.data() + lo + static_cast<std::size_t>(hi) * stride * nk;
            for (std::size_t r = 0; r < nk; ++r) {
                dst[r * stride] = src[r];
            }
        }
    }
    return x;
}

DenseTensor mode_mult(const DenseTensor& x, const DenseMatrix& m, std::size_t mode) {
    if (mode >= x.order()) throw RangeError("mode out of range");
    if (m.cols() != x.dims()[mode]) {
        throw ShapeError("factor columns must match the mode extent");
    }
    ModeUnfolding unf = mode_unfold(x, mode);
    DenseMatrix product = matmul(m, unf.matrix);
    std::vector<std::size_t> new_dims = x.dims();
    new_dims[mode] = m.rows();
    return mode_fold(ModeUnfolding{mode, std::move(product), std::move(new_dims)});
}

std::vector<std::size_t> multilinear_rank(const DenseTensor& x, RankTolerance tol) {
    std::vector<std::size_t> ranks(x.order());
    for (std::size_t k = 0; k < x.order(); ++k) {
        ranks[k] = numeric_rank(jacobi_svd(mode_unfold(x, k).matrix).sigma, tol);
    }
    return ranks;
}

Hosvd hosvd(const DenseTensor& x, std::span<const std::size_t> target) {
    const auto& dims = x.dims();
    if (target.size() != dims.size()) {
        throw ShapeError("target length must equal the tensor order");
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (target[k] < 1 || target[k] > dims[k]) {
            throw RangeError("target rank out of range");
        }
    }
    std::vector<DenseMatrix> factors;
    factors.reserve(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        SvdResult svd = jacobi_svd(mode_unfold(x, k).matrix);
        DenseMatrix uk(dims[k], target[k]);
        std::copy_n(svd.u.data(), uk.size(), uk.data());
        factors.push_back(std::move(uk));
    }
    DenseTensor core = x;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        core = mode_mult(core, transpose(factors[k]), k);
    }
    DenseTensor recon = core;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        recon = mode_mult(recon, factors[k], k);
    }
    const double error = fro_dist(x.values(), recon.values());
    return Hosvd{std::move(core), std::move(factors), error};
}

} // namespace kronkit
