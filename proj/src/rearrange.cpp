#include "kronkit/rearrange.hpp"

#include <cstdint>

namespace kronkit {

BlockShape::BlockShape(std::size_t m, std::size_t n, std::size_t p, std::size_t q)
    : grid_rows(m), grid_cols(n), block_rows(p), block_cols(q) {
    if (m == 0 || n == 0 || p == 0 || q == 0) {
        throw ShapeError("block shape extents must be positive");
    }
}

void require_consistent(const BlockShape& shape, const DenseMatrix& a) {
    if (a.rows() != shape.host_rows() || a.cols() != shape.host_cols()) {
        throw ShapeError("matrix is not (m*p) x (n*q) for the given block shape");
    }
}

DenseMatrix rearrange(const DenseMatrix& a, const BlockShape& shape) {
    require_consistent(shape, a);
    const std::size_t m = shape.grid_rows, n = shape.grid_cols;
    const std::size_t p = shape.block_rows, q = shape.block_cols;
    const std::size_t rows = shape.grid_size();  // mn
    const std::size_t cols = shape.block_size(); // pq
    DenseMatrix t(rows, cols);
    // Pure gather: T(i + j*m, s + t*p) = a(i*p + s, j*q + t).
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(cols); ++c) {
        const std::size_t s = static_cast<std::size_t>(c) % p;
        const std::size_t tt = static_cast<std::size_t>(c) / p;
        double* dst = t.data() + static_cast<std::size_t>(c) * rows;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) {
                dst[i + j * m] = a(i * p + s, j * q + tt);
            }
        }
    }
    return t;
}

DenseMatrix unrearrange(const DenseMatrix& r, const BlockShape& shape) {
    const std::size_t m = shape.grid_rows, n = shape.grid_cols;
    const std::size_t p = shape.block_rows, q = shape.block_cols;
    if (r.rows() != shape.grid_size() || r.cols() != shape.block_size()) {
        throw ShapeError("rearrangement shape mismatch");
    }
    DenseMatrix a(shape.host_rows(), shape.host_cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(r.cols()); ++c) {
        const std::size_t s = static_cast<std::size_t>(c) % p;
        const std::size_t tt = static_cast<std::size_t>(c) / p;
        const double* src = r.data() + static_cast<std::size_t>(c) * r.rows();
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) {
                a(i * p + s, j * q + tt) = src[i + j * m];
            }
        }
    }
    return a;
}

DenseTensor matrix_to_tensor4(const DenseMatrix& a, const BlockShape& shape) {
    require_consistent(shape, a);
    const std::size_t m = shape.grid_rows, n = shape.grid_cols;
    const std::size_t p = shape.block_rows, q = shape.block_cols;
    DenseTensor x({p, q, m, n});
    double* dst = x.data();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t t = 0; t < q; ++t) {
                for (std::size_t s = 0; s < p; ++s) {
                    dst[s + p * (t + q * (i + m * j))] = a(i * p + s, j * q + t);
                }
            }
        }
    }
    return x;
}

} // namespace kronkit
