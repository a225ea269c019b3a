#include "kronkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <vector>

#include "kronkit/dense.hpp"
#include "kronkit/kron.hpp"

namespace kronkit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

DenseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix a(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) a.data()[k] = dist(rng);
    return a;
}

double median(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

} // namespace

MatvecBenchResult bench_matvec(std::size_t m, std::size_t n, std::size_t p,
                               std::size_t q, std::size_t reps) {
    if (reps == 0) reps = 1;
    std::mt19937 rng(20250810); // fixed seed, reproducible timings and data
    const DenseMatrix b = random_matrix(rng, m, n);
    const DenseMatrix c = random_matrix(rng, p, q);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(checked_mul(n, q));
    for (double& v : x) v = dist(rng);

    std::vector<double> explicit_times, structured_times;
    explicit_times.reserve(reps);
    structured_times.reserve(reps);
    double diff = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        std::vector<double> y_explicit, y_structured;
        {
            const auto start = Clock::now();
            DenseMatrix k = kron(b, c);
            y_explicit = matvec(k, x);
            explicit_times.push_back(seconds_since(start));
        }
        {
            const auto start = Clock::now();
            y_structured = kron_matvec(b, c, x);
            structured_times.push_back(seconds_since(start));
        }
        diff = std::max(diff, max_abs_diff(y_explicit, y_structured));
    }

    MatvecBenchResult result{};
    result.explicit_median_s = median(std::move(explicit_times));
    result.structured_median_s = median(std::move(structured_times));
    result.speedup = result.structured_median_s > 0.0
                         ? result.explicit_median_s / result.structured_median_s
                         : std::numeric_limits<double>::infinity();
    result.max_abs_diff = diff;
    return result;
}

} // namespace kronkit
