#include <doctest.h>

#include <cmath>
#include <random>

#include "kronkit/kron.hpp"
#include "kronkit/rearrange.hpp"
#include "oracles.hpp"

using namespace kronkit;

TEST_CASE("rearrange trivial shapes") {
    std::mt19937 rng(31);
    const DenseMatrix a = testkit::random_matrix(rng, 3, 4);

    // one block: the single row vec(a)^T
    const DenseMatrix t1 = rearrange(a, BlockShape(1, 1, 3, 4));
    CHECK(t1.rows() == 1);
    CHECK(t1.cols() == 12);
    CHECK(testkit::bits_equal(transpose(t1).values(), vec(a)));

    // scalar blocks: the single column vec(a)
    const DenseMatrix t2 = rearrange(a, BlockShape(3, 4, 1, 1));
    CHECK(t2.rows() == 12);
    CHECK(t2.cols() == 1);
    CHECK(testkit::bits_equal(t2.values(), vec(a)));
}

TEST_CASE("rearrange of a Kronecker product is the vec outer product") {
    const DenseMatrix b(2, 2, {1, 3, 2, 4}); // [[1,2],[3,4]]
    const DenseMatrix c(2, 2, {5, 7, 6, 8}); // [[5,6],[7,8]]
    const DenseMatrix a = kron(b, c);
    const DenseMatrix t = rearrange(a, BlockShape(2, 2, 2, 2));
    const DenseMatrix expect = outer(vec(b), vec(c));
    CHECK(testkit::bits_equal(t.values(), expect.values()));

    // frozen: vec(b) = (1,3,2,4), vec(c) = (5,7,6,8)
    CHECK(t(0, 0) == 5.0);
    CHECK(t(1, 0) == 15.0);
    CHECK(t(0, 1) == 7.0);
    CHECK(t(3, 3) == 32.0);

    std::mt19937 rng(32);
    for (int rep = 0; rep < 20; ++rep) {
        const DenseMatrix br = testkit::random_matrix(rng, 2, 3);
        const DenseMatrix cr = testkit::random_matrix(rng, 3, 2);
        const DenseMatrix tr = rearrange(kron(br, cr), BlockShape(2, 3, 3, 2));
        CHECK(testkit::bits_equal(tr.values(), outer(vec(br), vec(cr)).values()));
    }
}

TEST_CASE("rearrange/unrearrange roundtrip, exhaustive shapes") {
    std::mt19937 rng(33);
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t p = 1; m * p <= 6; ++p)
            for (std::size_t n = 1; n <= 6; ++n)
                for (std::size_t q = 1; n * q <= 6; ++q) {
                    const BlockShape shape(m, n, p, q);
                    const DenseMatrix a = testkit::random_matrix(rng, m * p, n * q);
                    const DenseMatrix t = rearrange(a, shape);
                    REQUIRE(t.rows() == m * n);
                    REQUIRE(t.cols() == p * q);
                    REQUIRE(testkit::multiset_bits_equal(t.values(), a.values()));
                    REQUIRE(testkit::bits_equal(unrearrange(t, shape).values(),
                                                a.values()));
                }
}

TEST_CASE("unrearrange inverts the defining property") {
    std::mt19937 rng(34);
    const DenseMatrix b = testkit::random_matrix(rng, 3, 2);
    const DenseMatrix c = testkit::random_matrix(rng, 2, 2);
    const DenseMatrix r = outer(vec(b), vec(c));
    const DenseMatrix a = unrearrange(r, BlockShape(3, 2, 2, 2));
    CHECK(testkit::bits_equal(a.values(), kron(b, c).values()));

    const DenseMatrix zero(6, 4);
    CHECK(fro_norm(unrearrange(zero, BlockShape(3, 2, 2, 2))) == 0.0);

    CHECK_THROWS_AS(unrearrange(zero, BlockShape(2, 2, 2, 2)), ShapeError);
    CHECK_THROWS_AS(rearrange(DenseMatrix(5, 5), BlockShape(2, 2, 2, 2)), ShapeError);
}

TEST_CASE("rearrange is linear") {
    std::mt19937 rng(35);
    const BlockShape shape(2, 2, 3, 2);
    for (int rep = 0; rep < 20; ++rep) {
        const DenseMatrix a = testkit::random_matrix(rng, 6, 4);
        const DenseMatrix b = testkit::random_matrix(rng, 6, 4);
        const double alpha = 1.7, beta = -0.4;
        const DenseMatrix lhs = rearrange(add(scale(a, alpha), scale(b, beta)), shape);
        const DenseMatrix rhs =
            add(scale(rearrange(a, shape), alpha), scale(rearrange(b, shape), beta));
        CHECK(fro_dist(lhs.values(), rhs.values()) <=
              1e-15 * std::max(1.0, fro_norm(rhs)));
    }
}

TEST_CASE("rearrange of a Kronecker sum is a sum of outer products") {
    std::mt19937 rng(36);
    const BlockShape shape(2, 3, 2, 2);
    for (int rep = 0; rep < 10; ++rep) {
        DenseMatrix a(4, 6);
        DenseMatrix expect(6, 4);
        for (int term = 0; term < 3; ++term) {
            const DenseMatrix b = testkit::random_matrix(rng, 2, 3);
            const DenseMatrix c = testkit::random_matrix(rng, 2, 2);
            a = add(a, kron(b, c));
            expect = add(expect, outer(vec(b), vec(c)));
        }
        const DenseMatrix t = rearrange(a, shape);
        CHECK(fro_dist(t.values(), expect.values()) <=
              1e-14 * std::max(1.0, fro_norm(expect)));
    }
}

TEST_CASE("matrix_to_tensor4 index identity") {
    std::mt19937 rng(37);

    // two trailing singleton dims for the single-block shape
    const DenseMatrix a0 = testkit::random_matrix(rng, 3, 4);
    const DenseTensor x0 = matrix_to_tensor4(a0, BlockShape(1, 1, 3, 4));
    CHECK(x0.dims() == std::vector<std::size_t>{3, 4, 1, 1});
    CHECK(testkit::bits_equal(x0.values(), a0.values()));

    const BlockShape shape(2, 3, 2, 2);
    const DenseMatrix a = testkit::random_matrix(rng, 4, 6);
    const DenseTensor x = matrix_to_tensor4(a, shape);
    CHECK(x.size() == a.size());
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t t = 0; t < 2; ++t)
                for (std::size_t s = 0; s < 2; ++s) {
                    const std::size_t linear =
                        linearize({{s, t, i, j}, {2, 2, 2, 3}});
                    CHECK(x.values()[linear] == a(i * 2 + s, j * 2 + t));
                }

    CHECK_THROWS_AS(matrix_to_tensor4(a, BlockShape(3, 3, 2, 2)), ShapeError);
}

TEST_CASE("rearrangement equals the grouped order-4 reshape") {
    std::mt19937 rng(38);
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t p = 1; m * p <= 6; ++p)
            for (std::size_t n = 1; n <= 3; ++n)
                for (std::size_t q = 1; n * q <= 6; ++q) {
                    const BlockShape shape(m, n, p, q);
                    const DenseMatrix a = testkit::random_matrix(rng, m * p, n * q);
                    const DenseMatrix t = rearrange(a, shape);
                    const DenseTensor x4 = matrix_to_tensor4(a, shape);
                    // rows group (i,j), cols group (s,t)
                    for (std::size_t k = 0; k < m * n; ++k)
                        for (std::size_t c = 0; c < p * q; ++c)
                            REQUIRE(t(k, c) == x4.values()[c + p * q * k]);
                }
}
