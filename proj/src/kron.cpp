#include "kronkit/kron.hpp"

#include <cstdint>

#include "kronkit/errors.hpp"

namespace kronkit {

DenseMatrix kron(const DenseMatrix& b, const DenseMatrix& c) {
    const std::size_t m = b.rows(), n = b.cols();
    const std::size_t p = c.rows(), q = c.cols();
    const std::size_t out_rows = checked_mul(m, p);
    const std::size_t out_cols = checked_mul(n, q);
    checked_mul(out_rows, out_cols);
    DenseMatrix out(out_rows, out_cols);
    // Column sweeps within each block; every output entry is the single
    // product b(i,j)*c(s,t), so the partition over block columns is free
    // to change without changing a bit of the result.
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
        for (std::size_t t = 0; t < q; ++t) {
            double* col = out.data() + (static_cast<std::size_t>(j) * q + t) * out_rows;
            const double* ccol = c.data() + t * p;
            for (std::size_t i = 0; i < m; ++i) {
                const double bij = b(i, static_cast<std::size_t>(j));
                double* dst = col + i * p;
                for (std::size_t s = 0; s < p; ++s) {
                    dst[s] = bij * ccol[s];
                }
            }
        }
    }
    return out;
}

std::vector<double> kron_matvec(const DenseMatrix& b, const DenseMatrix& c,
                                std::span<const double> x) {
    const std::size_t n = b.cols();
    const std::size_t q = c.cols();
    if (x.size() != checked_mul(n, q)) {
        throw ShapeError("vector length does not match n*q");
    }
    // vec(c * X * b^T) with X the q x n reshape of x; the reshape is free
    // in column-major storage.
    DenseMatrix xmat(q, n);
    std::copy(x.begin(), x.end(), xmat.data());
    DenseMatrix cx = matmul(c, xmat);
    DenseMatrix z = matmul(cx, transpose(b));
    return {z.values().begin(), z.values().end()};
}

DenseMatrix blockvec(const DenseMatrix& a, const BlockShape& shape) {
    require_consistent(shape, a);
    const std::size_t m = shape.grid_rows, n = shape.grid_cols;
    const std::size_t p = shape.block_rows, q = shape.block_cols;
    DenseMatrix out(checked_mul(shape.grid_size(), p), q);
    for (std::size_t t = 0; t < q; ++t) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t k = i + j * m;
                for (std::size_t s = 0; s < p; ++s) {
                    out(k * p + s, t) = a(i * p + s, j * q + t);
                }
            }
        }
    }
    return out;
}

DenseMatrix blockmat(const DenseMatrix& v, const BlockShape& shape) {
    const std::size_t m = shape.grid_rows, n = shape.grid_cols;
    const std::size_t p = shape.block_rows, q = shape.block_cols;
    if (v.rows() != checked_mul(shape.grid_size(), p) || v.cols() != q) {
        throw ShapeError("stacked-block shape mismatch");
    }
    DenseMatrix out(shape.host_rows(), shape.host_cols());
    for (std::size_t t = 0; t < q; ++t) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t k = i + j * m;
                for (std::size_t s = 0; s < p; ++s) {
                    out(i * p + s, j * q + t) = v(k * p + s, t);
                }
            }
        }
    }
    return out;
}

KronOperator::KronOperator(DenseMatrix b, DenseMatrix c)
    : b_(std::move(b)), c_(std::move(c)) {
    checked_mul(b_.rows(), c_.rows());
    checked_mul(b_.cols(), c_.cols());
}

std::vector<double> KronOperator::apply(std::span<const double> x) const {
    return kron_matvec(b_, c_, x);
}

DenseMatrix KronOperator::materialize() const { return kron(b_, c_); }

} // namespace kronkit
