#pragma once

// Test-only helpers: deterministic input generators and independent
// oracles (Gram characteristic polynomial spectra, naive Kronecker
// expansion, commutation matrices). Nothing here calls the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kronkit/dense.hpp"

namespace testkit {

inline kronkit::DenseMatrix random_matrix(std::mt19937& rng, std::size_t rows,
                                          std::size_t cols, double lo = -1.0,
                                          double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    kronkit::DenseMatrix a(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) a.data()[k] = dist(rng);
    return a;
}

inline kronkit::DenseTensor random_tensor(std::mt19937& rng,
                                          std::vector<std::size_t> dims) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    kronkit::DenseTensor x(std::move(dims));
    for (std::size_t k = 0; k < x.size(); ++k) x.data()[k] = dist(rng);
    return x;
}

inline std::vector<double> random_vector(std::mt19937& rng, std::size_t len) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(len);
    for (double& v : x) v = dist(rng);
    return x;
}

inline bool bits_equal(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k] || std::signbit(a[k]) != std::signbit(b[k])) return false;
    }
    return true;
}

inline bool multiset_bits_equal(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return bits_equal(sa, sb);
}

// Plain quadruple-loop Kronecker expansion, independent of the library path.
inline kronkit::DenseMatrix naive_kron(const kronkit::DenseMatrix& b,
                                       const kronkit::DenseMatrix& c) {
    kronkit::DenseMatrix out(b.rows() * c.rows(), b.cols() * c.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t s = 0; s < c.rows(); ++s)
                for (std::size_t t = 0; t < c.cols(); ++t)
                    out(i * c.rows() + s, j * c.cols() + t) = b(i, j) * c(s, t);
    return out;
}

inline std::vector<double> naive_matvec(const kronkit::DenseMatrix& a,
                                        std::span<const double> x) {
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

// Permutation with K * vec(X) = vec(X^T) for X of size p x q.
inline kronkit::DenseMatrix commutation_matrix(std::size_t p, std::size_t q) {
    kronkit::DenseMatrix k(p * q, p * q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) k(j + i * q, i + j * p) = 1.0;
    return k;
}

// Singular values via the characteristic polynomial of the Gram matrix of
// the smaller side (must be at most 3x3), evaluated in long double.
// Descending. Certifies the squared spectrum to ~1e-18 absolute relative
// to lambda_1; the sqrt step limits near-null sigmas to ~1e-9 absolute,
// which is why comparisons against it are made on the squared spectrum.
inline std::vector<double> gram_charpoly_sigmas(const kronkit::DenseMatrix& a) {
    const bool use_rows = a.rows() <= a.cols();
    const std::size_t n = use_rows ? a.rows() : a.cols();
    if (n > 3) throw std::logic_error("oracle limited to 3x3 Gram matrices");

    long double g[3][3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double s = 0.0L;
            const std::size_t inner = use_rows ? a.cols() : a.rows();
            for (std::size_t k = 0; k < inner; ++k) {
                const long double x = use_rows ? a(i, k) : a(k, i);
                const long double y = use_rows ? a(j, k) : a(k, j);
                s += x * y;
            }
            g[i][j] = s;
        }
    }

    std::vector<long double> lambda;
    if (n == 1) {
        lambda = {g[0][0]};
    } else if (n == 2) {
        // cancellation-free discriminant for the symmetric 2x2 case
        const long double mid = (g[0][0] + g[1][1]) / 2;
        const long double half_gap = (g[0][0] - g[1][1]) / 2;
        const long double disc =
            std::sqrt(std::max(0.0L, half_gap * half_gap + g[0][1] * g[1][0]));
        lambda = {mid + disc, mid - disc};
    } else {
        // Symmetric 3x3 eigenvalues by the trigonometric closed form.
        const long double q = (g[0][0] + g[1][1] + g[2][2]) / 3.0L;
        const long double p1 =
            g[0][1] * g[0][1] + g[0][2] * g[0][2] + g[1][2] * g[1][2];
        const long double p2 = (g[0][0] - q) * (g[0][0] - q) +
                               (g[1][1] - q) * (g[1][1] - q) +
                               (g[2][2] - q) * (g[2][2] - q) + 2.0L * p1;
        if (p2 == 0.0L) {
            lambda = {q, q, q};
        } else {
            const long double p = std::sqrt(p2 / 6.0L);
            long double b[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    b[i][j] = (g[i][j] - (i == j ? q : 0.0L)) / p;
            const long double detb =
                b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
            const long double r = std::clamp(detb / 2.0L, -1.0L, 1.0L);
            const long double phi = std::acos(r) / 3.0L;
            const long double l1 = q + 2.0L * p * std::cos(phi);
            const long double l3 =
                q + 2.0L * p * std::cos(phi + 2.0L * std::acos(-1.0L) / 3.0L);
            lambda = {l1, 3.0L * q - l1 - l3, l3};
        }
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    std::vector<double> sigma(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        sigma[k] = static_cast<double>(std::sqrt(std::max(0.0L, lambda[k])));
    }
    return sigma;
}

// Gram eigenvalues (sigma squared) from the same oracle, descending.
inline std::vector<double> gram_charpoly_eigs(const kronkit::DenseMatrix& a) {
    std::vector<double> sigma = gram_charpoly_sigmas(a);
    for (double& s : sigma) s = s * s;
    return sigma;
}

} // namespace testkit
