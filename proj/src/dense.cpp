#include "kronkit/dense.hpp"

#include <cmath>
#include <cstdint>

namespace kronkit {

namespace {

void require_finite(const std::vector<double>& values) {
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw DomainError("non-finite entry rejected at construction");
        }
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(checked_mul(rows, cols), 0.0) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix extents must be positive");
    }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix extents must be positive");
    }
    if (values_.size() != checked_mul(rows, cols)) {
        throw ShapeError("value count does not match rows*cols");
    }
    require_finite(values_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix eye(n, n);
    for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
    return eye;
}

DenseTensor::DenseTensor(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
    if (dims_.empty()) throw ShapeError("tensor order must be at least 1");
    std::size_t total = 1;
    for (std::size_t n : dims_) {
        if (n == 0) throw ShapeError("tensor extents must be positive");
        total = checked_mul(total, n);
    }
    values_.assign(total, 0.0);
}

DenseTensor::DenseTensor(std::vector<std::size_t> dims,
                         std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
    if (dims_.empty()) throw ShapeError("tensor order must be at least 1");
    std::size_t total = 1;
    for (std::size_t n : dims_) {
        if (n == 0) throw ShapeError("tensor extents must be positive");
        total = checked_mul(total, n);
    }
    if (values_.size() != total) {
        throw ShapeError("value count does not match the dimension product");
    }
    require_finite(values_);
}

DenseTensor DenseTensor::from_matrix(const DenseMatrix& a) {
    DenseTensor x({a.rows(), a.cols()});
    std::copy(a.values().begin(), a.values().end(), x.data());
    return x;
}

DenseMatrix DenseTensor::to_matrix() const {
    if (order() != 2) {
        throw ShapeError("only an order-2 tensor converts to a matrix");
    }
    DenseMatrix a(dims_[0], dims_[1]);
    std::copy(values_.begin(), values_.end(), a.data());
    return a;
}

std::size_t linearize(const MultiIndex& idx) {
    if (idx.entries.size() != idx.bounds.size() || idx.entries.empty()) {
        throw ShapeError("multi-index and bounds must have equal positive length");
    }
    std::size_t linear = 0;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < idx.entries.size(); ++k) {
        if (idx.bounds[k] == 0 || idx.entries[k] >= idx.bounds[k]) {
            throw RangeError("multi-index entry out of bounds");
        }
        linear += idx.entries[k] * stride;
        stride = checked_mul(stride, idx.bounds[k]);
    }
    return linear;
}

MultiIndex delinearize(std::size_t linear, std::vector<std::size_t> bounds) {
    if (bounds.empty()) {
        throw ShapeError("bounds must have positive length");
    }
    std::size_t total = 1;
    for (std::size_t n : bounds) {
        if (n == 0) throw RangeError("bounds must be positive");
        total = checked_mul(total, n);
    }
    if (linear >= total) {
        throw RangeError("linear index out of range");
    }
    MultiIndex idx;
    idx.entries.resize(bounds.size());
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        idx.entries[k] = linear % bounds[k];
        linear /= bounds[k];
    }
    idx.bounds = std::move(bounds);
    return idx;
}

DenseMatrix sym(const DenseMatrix& a) {
    if (a.rows() != a.cols()) {
        throw ShapeError("sym requires a square matrix");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            out(i, j) = 0.5 * (a(i, j) + a(j, i));
        }
    }
    return out;
}

double sgn(double x) {
    if (std::isnan(x)) throw DomainError("sgn of NaN is undefined");
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

double norm2(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double fro_norm(const DenseMatrix& a) noexcept { return norm2(a.values()); }
double fro_norm(const DenseTensor& x) noexcept { return norm2(x.values()); }

double inf_norm(const DenseMatrix& a) noexcept {
    std::vector<double> row_sums(a.rows(), 0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            row_sums[i] += std::abs(a(i, j));
        }
    }
    double best = 0.0;
    for (double s : row_sums) best = std::max(best, s);
    return best;
}

double fro_dist(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ShapeError("length mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ShapeError("length mismatch");
    double best = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        best = std::max(best, std::abs(a[k] - b[k]));
    }
    return best;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("inner dimensions do not match");
    }
    const std::size_t m = a.rows();
    const std::size_t kk = a.cols();
    const std::size_t n = b.cols();
    DenseMatrix out(m, n);
    // Per output entry the k-accumulation order is fixed and ascending, so
    // the column partition below cannot change any result.
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
        double* dst = out.data() + static_cast<std::size_t>(j) * m;
        for (std::size_t l = 0; l < kk; ++l) {
            const double blj = b(l, static_cast<std::size_t>(j));
            const double* acol = a.data() + l * m;
            for (std::size_t i = 0; i < m; ++i) {
                dst[i] += acol[i] * blj;
            }
        }
    }
    return out;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) {
        throw ShapeError("vector length does not match column count");
    }
    std::vector<double> y(a.rows(), 0.0);
    const std::size_t m = a.rows();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(static_cast<std::size_t>(i), j) * x[j];
        }
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

DenseMatrix outer(std::span<const double> u, std::span<const double> v) {
    if (u.empty() || v.empty()) throw ShapeError("outer factors must be non-empty");
    DenseMatrix out(u.size(), v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            out(i, j) = u[i] * v[j];
        }
    }
    return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("shape mismatch in add");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out.data()[k] = a.data()[k] + b.data()[k];
    }
    return out;
}

DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("shape mismatch in sub");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out.data()[k] = a.data()[k] - b.data()[k];
    }
    return out;
}

DenseMatrix scale(const DenseMatrix& a, double alpha) {
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out.data()[k] = alpha * a.data()[k];
    }
    return out;
}

} // namespace kronkit
