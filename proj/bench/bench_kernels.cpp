// Compares the parallel kernels against their serial reference
// implementations: wall time per kernel plus a bit-level equality check.
// Usage: bench_kernels [reps]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "kronkit/dense.hpp"
#include "kronkit/kron.hpp"
#include "kronkit/rearrange.hpp"
#include "kronkit/reference.hpp"
#include "kronkit/threading.hpp"
#include "kronkit/unfold.hpp"

using namespace kronkit;

namespace {

using Clock = std::chrono::steady_clock;

DenseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix a(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) a.data()[k] = dist(rng);
    return a;
}

DenseTensor random_tensor(std::mt19937& rng, std::vector<std::size_t> dims) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseTensor x(std::move(dims));
    for (std::size_t k = 0; k < x.size(); ++k) x.data()[k] = dist(rng);
    return x;
}

double median_time(std::size_t reps, const std::function<void()>& fn) {
    std::vector<double> samples;
    samples.reserve(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto start = Clock::now();
        fn();
        samples.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

void report(const char* name, double serial_s, double parallel_s, bool bit_equal) {
    std::printf("%-14s serial %10.6fs  parallel %10.6fs  speedup %6.2fx  %s\n",
                name, serial_s, parallel_s,
                parallel_s > 0.0 ? serial_s / parallel_s : 0.0,
                bit_equal ? "bit-identical" : "MISMATCH");
}

bool bits_equal(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) return false;
        if (std::signbit(a[k]) != std::signbit(b[k])) return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t reps = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 5;
    std::mt19937 rng(7);
    std::printf("threads available: %d\n", max_threads());

    {
        const DenseMatrix b = random_matrix(rng, 96, 96);
        const DenseMatrix c = random_matrix(rng, 48, 48);
        const DenseMatrix serial = ref::kron(b, c);
        const DenseMatrix parallel = kron(b, c);
        report("kron", median_time(reps, [&] { ref::kron(b, c); }),
               median_time(reps, [&] { kron(b, c); }),
               bits_equal(serial.values(), parallel.values()));
    }
    {
        const DenseMatrix a = random_matrix(rng, 256, 256);
        const DenseMatrix b = random_matrix(rng, 256, 256);
        const DenseMatrix serial = ref::matmul(a, b);
        const DenseMatrix parallel = matmul(a, b);
        report("matmul", median_time(reps, [&] { ref::matmul(a, b); }),
               median_time(reps, [&] { matmul(a, b); }),
               bits_equal(serial.values(), parallel.values()));
    }
    {
        const DenseMatrix b = random_matrix(rng, 64, 64);
        const DenseMatrix c = random_matrix(rng, 64, 64);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> x(64 * 64);
        for (double& v : x) v = dist(rng);
        const auto serial = ref::kron_matvec(b, c, x);
        const auto parallel = kron_matvec(b, c, x);
        report("kron_matvec", median_time(reps, [&] { ref::kron_matvec(b, c, x); }),
               median_time(reps, [&] { kron_matvec(b, c, x); }),
               bits_equal(serial, parallel));
    }
    {
        const DenseMatrix a = random_matrix(rng, 512, 512);
        const BlockShape shape(64, 64, 8, 8);
        const DenseMatrix serial = ref::rearrange(a, shape);
        const DenseMatrix parallel = rearrange(a, shape);
        report("rearrange", median_time(reps, [&] { ref::rearrange(a, shape); }),
               median_time(reps, [&] { rearrange(a, shape); }),
               bits_equal(serial.values(), parallel.values()));
    }
    {
        const DenseTensor x = random_tensor(rng, {48, 32, 24});
        const DenseMatrix serial = ref::mode_unfold_matrix(x, 1);
        const ModeUnfolding parallel = mode_unfold(x, 1);
        report("mode_unfold",
               median_time(reps, [&] { ref::mode_unfold_matrix(x, 1); }),
               median_time(reps, [&] { mode_unfold(x, 1); }),
               bits_equal(serial.values(), parallel.matrix.values()));
    }
    return 0;
}
