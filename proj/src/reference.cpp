#include "kronkit/reference.hpp"

namespace kronkit::ref {

DenseMatrix kron(const DenseMatrix& b, const DenseMatrix& c) {
    const std::size_t m = b.rows(), n = b.cols();
    const std::size_t p = c.rows(), q = c.cols();
    DenseMatrix out(checked_mul(m, p), checked_mul(n, q));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < q; ++t) {
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t s = 0; s < p; ++s) {
                    out(i * p + s, j * q + t) = b(i, j) * c(s, t);
                }
            }
        }
    }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("inner dimensions do not match");
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            double s = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) {
                s += a(i, l) * b(l, j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) throw ShapeError("vector length mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> kron_matvec(const DenseMatrix& b, const DenseMatrix& c,
                                std::span<const double> x) {
    const std::size_t n = b.cols(), q = c.cols();
    if (x.size() != checked_mul(n, q)) throw ShapeError("vector length mismatch");
    DenseMatrix xmat(q, n);
    std::copy(x.begin(), x.end(), xmat.data());
    DenseMatrix z = ref::matmul(ref::matmul(c, xmat), transpose(b));
    return {z.values().begin(), z.values().end()};
}

DenseMatrix rearrange(const DenseMatrix& a, const BlockShape& shape) {
    require_consistent(shape, a);
    const std::size_t m = shape.grid_rows, n = shape.grid_cols;
    const std::size_t p = shape.block_rows, q = shape.block_cols;
    DenseMatrix t(shape.grid_size(), shape.block_size());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t tt = 0; tt < q; ++tt) {
                for (std::size_t s = 0; s < p; ++s) {
                    t(i + j * m, s + tt * p) = a(i * p + s, j * q + tt);
                }
            }
        }
    }
    return t;
}

DenseMatrix mode_unfold_matrix(const DenseTensor& x, std::size_t mode) {
    const auto& dims = x.dims();
    if (mode >= dims.size()) throw RangeError("mode out of range");
    std::size_t stride = 1;
    for (std::size_t j = 0; j < mode; ++j) stride *= dims[j];
    const std::size_t nk = dims[mode];
    const std::size_t rest = x.size() / nk;
    DenseMatrix m(nk, rest);
    for (std::size_t hi = 0; hi < rest / stride; ++hi) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            for (std::size_t r = 0; r < nk; ++r) {
                m(r, lo + hi * stride) = x.data()[lo + r * stride + hi * stride * nk];
            }
        }
    }
    return m;
}

} // namespace kronkit::ref
