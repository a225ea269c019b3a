#include "kronkit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kronkit/errors.hpp"

namespace kronkit {

namespace {

constexpr double kCouplingTol = 1e-15;
constexpr int kMaxSweeps = 60;

double col_dot(const DenseMatrix& g, std::size_t i, std::size_t j) {
    const double* a = g.data() + i * g.rows();
    const double* b = g.data() + j * g.rows();
    double s = 0.0;
    for (std::size_t k = 0; k < g.rows(); ++k) s += a[k] * b[k];
    return s;
}

void rotate_cols(DenseMatrix& g, std::size_t i, std::size_t j, double cs, double sn) {
    double* a = g.data() + i * g.rows();
    double* b = g.data() + j * g.rows();
    for (std::size_t k = 0; k < g.rows(); ++k) {
        const double x = a[k];
        const double y = b[k];
        a[k] = cs * x - sn * y;
        b[k] = sn * x + cs * y;
    }
}

bool is_zero_matrix(const DenseMatrix& a) {
    for (double x : a.values()) {
        if (x != 0.0) return false;
    }
    return true;
}

// Flip (u_k, v_k) so the first largest-magnitude entry of v_k is >= 0.
void apply_sign_convention(std::span<double> u, std::span<double> v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (std::abs(v[k]) > std::abs(v[best])) best = k;
    }
    if (v[best] < 0.0) {
        for (double& x : u) x = -x;
        for (double& x : v) x = -x;
    }
}

// Orthonormal fill-in for a column whose singular value is exactly zero:
// the first basis vector with a sizeable component outside span(filled).
void complete_column(DenseMatrix& u, std::size_t col) {
    const std::size_t m = u.rows();
    std::vector<double> w(m);
    for (std::size_t cand = 0; cand < m; ++cand) {
        std::fill(w.begin(), w.end(), 0.0);
        w[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t c = 0; c < u.cols(); ++c) {
                if (c == col) continue;
                double proj = 0.0;
                for (std::size_t k = 0; k < m; ++k) proj += u(k, c) * w[k];
                for (std::size_t k = 0; k < m; ++k) w[k] -= proj * u(k, c);
            }
        }
        const double nw = norm2(w);
        if (nw > 0.5) {
            for (std::size_t k = 0; k < m; ++k) u(k, col) = w[k] / nw;
            return;
        }
    }
    throw ContractError("orthonormal completion failed");
}

// Sort triplets by descending sigma (stable on ties), normalize the left
// columns, fill in exact-zero directions, and fix signs.
SvdResult finalize(DenseMatrix g, DenseMatrix v) {
    const std::size_t n = g.cols();
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(col_dot(g, j, j));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    DenseMatrix u(g.rows(), n);
    DenseMatrix vs(v.rows(), n);
    std::vector<double> ss(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = perm[j];
        ss[j] = sigma[src];
        for (std::size_t k = 0; k < g.rows(); ++k) u(k, j) = g(k, src);
        for (std::size_t k = 0; k < v.rows(); ++k) vs(k, j) = v(k, src);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (ss[j] > 0.0) {
            for (std::size_t k = 0; k < u.rows(); ++k) u(k, j) /= ss[j];
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (ss[j] == 0.0) complete_column(u, j);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::span<double> uj{u.data() + j * u.rows(), u.rows()};
        std::span<double> vj{vs.data() + j * vs.rows(), vs.rows()};
        apply_sign_convention(uj, vj);
    }
    return SvdResult{std::move(u), std::move(ss), std::move(vs)};
}

// One-sided Jacobi on the columns of a (rows >= cols). Each rotation
// orthogonalizes one column pair of the implicit Gram matrix.
SvdResult jacobi_svd_tall(const DenseMatrix& a) {
    DenseMatrix g = a;
    DenseMatrix v = DenseMatrix::identity(a.cols());
    const std::size_t n = a.cols();

    bool converged = (n < 2);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double aii = col_dot(g, i, i);
                const double ajj = col_dot(g, j, j);
                if (aii == 0.0 || ajj == 0.0) continue;
                const double aij = col_dot(g, i, j);
                if (std::abs(aij) <= kCouplingTol * std::sqrt(aii * ajj)) continue;
                converged = false;
                const double tau = (ajj - aii) / (2.0 * aij);
                // Guarded sign: tau == 0 takes the +1 branch (45-degree case).
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::hypot(1.0, tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                rotate_cols(g, i, j, cs, sn);
                rotate_cols(v, i, j, cs, sn);
            }
        }
    }
    if (!converged) {
        throw ConvergenceError("one-sided Jacobi did not converge within 60 sweeps",
                               finalize(std::move(g), std::move(v)));
    }
    return finalize(std::move(g), std::move(v));
}

} // namespace

SvdResult jacobi_svd(const DenseMatrix& a) {
    if (a.rows() >= a.cols()) {
        return jacobi_svd_tall(a);
    }
    // Factor the transpose and swap the singular vector roles. The sign
    // convention is applied inside finalize on the transposed problem's v,
    // so reapply it on the swapped result.
    SvdResult st = jacobi_svd_tall(transpose(a));
    SvdResult out{std::move(st.v), std::move(st.sigma), std::move(st.u)};
    for (std::size_t j = 0; j < out.sigma.size(); ++j) {
        std::span<double> uj{out.u.data() + j * out.u.rows(), out.u.rows()};
        std::span<double> vj{out.v.data() + j * out.v.rows(), out.v.rows()};
        apply_sign_convention(uj, vj);
    }
    return out;
}

std::pair<SvdResult, double> truncated_svd(const DenseMatrix& a, std::size_t rank) {
    const std::size_t r_full = std::min(a.rows(), a.cols());
    if (rank < 1 || rank > r_full) {
        throw RangeError("truncation rank out of range");
    }
    SvdResult full = jacobi_svd(a);
    double tail = 0.0;
    for (std::size_t k = rank; k < r_full; ++k) tail += full.sigma[k] * full.sigma[k];

    DenseMatrix u(full.u.rows(), rank);
    DenseMatrix v(full.v.rows(), rank);
    std::copy_n(full.u.data(), u.size(), u.data());
    std::copy_n(full.v.data(), v.size(), v.data());
    std::vector<double> sigma(full.sigma.begin(), full.sigma.begin() + rank);
    return {SvdResult{std::move(u), std::move(sigma), std::move(v)},
            std::sqrt(tail)};
}

DominantTriplet dominant_triplet(const DenseMatrix& a, double tol,
                                 std::size_t max_iter) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (is_zero_matrix(a)) {
        throw DomainError("dominant triplet of the zero matrix is undefined");
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<double> u(m, 1.0 / std::sqrt(static_cast<double>(m)));
    std::vector<double> v(n, 0.0);
    std::vector<double> w(n), z(m);
    double sigma = 0.0;
    double sigma_prev = -1.0;
    std::size_t restart = 0;

    auto as_result = [&](double s) {
        DenseMatrix uc(m, 1, std::vector<double>(u));
        DenseMatrix vc(n, 1, std::vector<double>(v));
        return SvdResult{std::move(uc), {s}, std::move(vc)};
    };

    for (std::size_t it = 1; it <= max_iter; ++it) {
        // w = a^T u (column dots, deterministic order)
        for (std::size_t j = 0; j < n; ++j) {
            const double* col = a.data() + j * m;
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += col[k] * u[k];
            w[j] = s;
        }
        const double wn = norm2(w);
        if (wn == 0.0) {
            // Start had no coupling with the row space; walk the basis.
            if (restart >= m) {
                throw ConvergenceError("power iteration found no coupled start",
                                       as_result(sigma));
            }
            std::fill(u.begin(), u.end(), 0.0);
            u[restart++] = 1.0;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / wn;
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double* col = a.data() + j * m;
            const double vj = v[j];
            for (std::size_t k = 0; k < m; ++k) z[k] += col[k] * vj;
        }
        sigma = norm2(z);
        if (sigma == 0.0) {
            if (restart >= m) {
                throw ConvergenceError("power iteration found no coupled start",
                                       as_result(sigma));
            }
            std::fill(u.begin(), u.end(), 0.0);
            u[restart++] = 1.0;
            continue;
        }
        for (std::size_t k = 0; k < m; ++k) u[k] = z[k] / sigma;
        if (std::abs(sigma - sigma_prev) <= tol * sigma) {
            apply_sign_convention(u, v);
            return DominantTriplet{sigma, std::move(u), std::move(v), it};
        }
        sigma_prev = sigma;
    }
    throw ConvergenceError("power iteration exceeded the iteration budget",
                           as_result(sigma));
}

std::size_t numeric_rank(std::span<const double> sigma, RankTolerance tol) {
    if (tol.rel_tol < 0.0) throw DomainError("rank tolerance must be non-negative");
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (sigma[k] < 0.0) throw ContractError("singular values must be non-negative");
        if (k > 0 && sigma[k] > sigma[k - 1]) {
            throw ContractError("singular values must be descending");
        }
    }
    if (sigma.empty() || sigma[0] == 0.0) return 0;
    std::size_t r = 0;
    for (double s : sigma) {
        if (s > tol.rel_tol * sigma[0]) ++r;
    }
    return r;
}

std::optional<double> cond2(const DenseMatrix& a) {
    SvdResult s = jacobi_svd(a);
    const double smin = s.sigma.back();
    if (smin == 0.0) return std::nullopt;
    return s.sigma.front() / smin;
}

} // namespace kronkit
