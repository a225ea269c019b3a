#include <doctest.h>

#include <random>

#include "kronkit/kron.hpp"
#include "kronkit/rearrange.hpp"
#include "kronkit/reference.hpp"
#include "kronkit/threading.hpp"
#include "kronkit/unfold.hpp"
#include "oracles.hpp"

using namespace kronkit;

// The parallel kernels are pure entry placements (or fixed-order
// per-entry reductions), so they must agree with the serial reference
// implementations bit for bit at any thread count.

TEST_CASE("parallel kernels match the serial reference bitwise") {
    std::mt19937 rng(91);
    const DenseMatrix b = testkit::random_matrix(rng, 13, 7);
    const DenseMatrix c = testkit::random_matrix(rng, 5, 9);
    const DenseMatrix a = testkit::random_matrix(rng, 24, 18);
    const DenseMatrix a2 = testkit::random_matrix(rng, 18, 11);
    const auto x = testkit::random_vector(rng, 7 * 9);
    const BlockShape shape(6, 3, 4, 6);
    const DenseTensor xt = testkit::random_tensor(rng, {5, 4, 3, 2});

    for (int threads : {1, 2, 4}) {
        set_num_threads(threads);
        CHECK(testkit::bits_equal(kron(b, c).values(), ref::kron(b, c).values()));
        CHECK(testkit::bits_equal(matmul(a, a2).values(), ref::matmul(a, a2).values()));
        CHECK(testkit::bits_equal(kron_matvec(b, c, x), ref::kron_matvec(b, c, x)));
        CHECK(testkit::bits_equal(matvec(a2, std::vector<double>(11, 0.25)),
                                  ref::matvec(a2, std::vector<double>(11, 0.25))));
        CHECK(testkit::bits_equal(rearrange(a, shape).values(),
                                  ref::rearrange(a, shape).values()));
        CHECK(testkit::bits_equal(unrearrange(rearrange(a, shape), shape).values(),
                                  a.values()));
        for (std::size_t mode = 0; mode < 4; ++mode) {
            CHECK(testkit::bits_equal(mode_unfold(xt, mode).matrix.values(),
                                      ref::mode_unfold_matrix(xt, mode).values()));
        }
    }
    set_num_threads(0);
}

TEST_CASE("thread count does not change eigensolver-backed results") {
    std::mt19937 rng(92);
    const DenseMatrix a = testkit::random_matrix(rng, 8, 8);
    const BlockShape shape(2, 2, 4, 4);

    set_num_threads(1);
    const DenseMatrix t1 = rearrange(a, shape);
    const auto r1 = multilinear_rank(matrix_to_tensor4(a, shape));

    set_num_threads(4);
    const DenseMatrix t4 = rearrange(a, shape);
    const auto r4 = multilinear_rank(matrix_to_tensor4(a, shape));

    CHECK(testkit::bits_equal(t1.values(), t4.values()));
    CHECK(r1 == r4);
    set_num_threads(0);
}
