#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "kronkit/dense.hpp"
#include "oracles.hpp"

using namespace kronkit;

TEST_CASE("constructors reject degenerate and non-finite input") {
    CHECK_THROWS_AS(DenseMatrix(0, 3), ShapeError);
    CHECK_THROWS_AS(DenseMatrix(3, 0), ShapeError);
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), DomainError);
    CHECK_THROWS_AS(DenseMatrix(1, 1, {std::numeric_limits<double>::infinity()}),
                    DomainError);
    CHECK_THROWS_AS(DenseTensor({2, 0, 3}), ShapeError);
    CHECK_THROWS_AS(DenseTensor(std::vector<std::size_t>{}), ShapeError);
    CHECK_THROWS_AS(DenseTensor({2}, {1.0, 2.0, 3.0}), ShapeError);
}

TEST_CASE("vec stacks columns and is the storage identity") {
    const DenseMatrix eye = DenseMatrix::identity(2);
    const std::vector<double> expect_eye{1, 0, 0, 1};
    CHECK(testkit::bits_equal(vec(eye), expect_eye));

    // [[1,2],[3,4]] in column-major storage
    const DenseMatrix a(2, 2, {1, 3, 2, 4});
    CHECK(a(0, 1) == 2.0);
    const std::vector<double> expect_a{1, 3, 2, 4};
    CHECK(testkit::bits_equal(vec(a), expect_a));

    const DenseMatrix s(1, 1, {5.5});
    CHECK(vec(s)[0] == 5.5);
}

TEST_CASE("vec is linear") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const DenseMatrix a = testkit::random_matrix(rng, 3, 4);
        const DenseMatrix b = testkit::random_matrix(rng, 3, 4);
        const double alpha = 0.7, beta = -1.3;
        const DenseMatrix combo = add(scale(a, alpha), scale(b, beta));
        for (std::size_t k = 0; k < combo.size(); ++k) {
            const double direct = alpha * vec(a)[k] + beta * vec(b)[k];
            CHECK(std::abs(vec(combo)[k] - direct) <=
                  1e-14 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("sym examples and properties") {
    const DenseMatrix s(2, 2, {1, 2, 2, 5});
    CHECK(testkit::bits_equal(sym(s).values(), s.values()));

    const DenseMatrix a(2, 2, {0, 0, 2, 0}); // [[0,2],[0,0]]
    const DenseMatrix expect(2, 2, {0, 1, 1, 0});
    CHECK(testkit::bits_equal(sym(a).values(), expect.values()));

    const DenseMatrix skew(2, 2, {0, -3, 3, 0});
    CHECK(fro_norm(sym(skew)) == 0.0);

    CHECK_THROWS_AS(sym(DenseMatrix(2, 3)), ShapeError);

    std::mt19937 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const DenseMatrix m = testkit::random_matrix(rng, 4, 4);
        const DenseMatrix sm = sym(m);
        CHECK(max_abs_diff(sym(sm).values(), sm.values()) <= 1e-15 * fro_norm(m));
        // m - sym(m) is skew
        const DenseMatrix rest = sub(m, sm);
        const DenseMatrix rest_t = transpose(rest);
        for (std::size_t k = 0; k < rest.size(); ++k) {
            CHECK(std::abs(rest.values()[k] + rest_t.values()[k]) <=
                  1e-15 * fro_norm(m));
        }
    }
}

TEST_CASE("sgn") {
    CHECK(sgn(3.5) == 1.0);
    CHECK(sgn(-2.0) == -1.0);
    CHECK(sgn(0.0) == 0.0);
    CHECK(sgn(-0.0) == 0.0);
    CHECK_THROWS_AS(sgn(std::nan("")), DomainError);
}

TEST_CASE("norms") {
    CHECK(fro_norm(DenseMatrix::identity(9)) == doctest::Approx(3.0).epsilon(1e-15));
    const DenseMatrix d(2, 2, {3, 0, 0, 4});
    CHECK(fro_norm(d) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(fro_norm(DenseMatrix(4, 7)) == 0.0);

    CHECK(inf_norm(DenseMatrix::identity(5)) == 1.0);
    const DenseMatrix a(2, 2, {1, 3, -2, 4}); // [[1,-2],[3,4]]
    CHECK(inf_norm(a) == 7.0);
    CHECK(inf_norm(DenseMatrix(2, 2)) == 0.0);

    const DenseTensor x({2, 2}, {3, 0, 0, 4});
    CHECK(fro_norm(x) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("linearize and delinearize") {
    CHECK(linearize({{0, 0, 0}, {2, 3, 4}}) == 0);
    CHECK(linearize({{1, 2}, {2, 3}}) == 5);
    CHECK_THROWS_AS(linearize({{2, 0}, {2, 3}}), RangeError);
    CHECK_THROWS_AS(delinearize(24, {2, 3, 4}), RangeError);

    // exhaustive roundtrip for bounds (2,3,4)
    for (std::size_t l = 0; l < 24; ++l) {
        const MultiIndex idx = delinearize(l, {2, 3, 4});
        CHECK(linearize(idx) == l);
    }
}

TEST_CASE("linearize/delinearize inverse over all small bounds") {
    // every bounds vector with d <= 4 and extents <= 4
    std::vector<std::vector<std::size_t>> all_bounds;
    for (std::size_t d = 1; d <= 4; ++d) {
        std::vector<std::size_t> bounds(d, 1);
        while (true) {
            all_bounds.push_back(bounds);
            std::size_t k = 0;
            while (k < d && bounds[k] == 4) bounds[k++] = 1;
            if (k == d) break;
            ++bounds[k];
        }
    }
    for (const auto& bounds : all_bounds) {
        std::size_t total = 1;
        for (std::size_t n : bounds) total *= n;
        for (std::size_t l = 0; l < total; ++l) {
            const MultiIndex idx = delinearize(l, bounds);
            REQUIRE(linearize(idx) == l);
        }
    }
}

TEST_CASE("matrix and order-2 tensor convert losslessly") {
    std::mt19937 rng(3);
    const DenseMatrix a = testkit::random_matrix(rng, 3, 5);
    const DenseTensor x = DenseTensor::from_matrix(a);
    CHECK(x.dims() == std::vector<std::size_t>{3, 5});
    CHECK(testkit::bits_equal(x.values(), a.values()));
    CHECK(testkit::bits_equal(x.to_matrix().values(), a.values()));
    CHECK_THROWS_AS(DenseTensor({2, 2, 2}).to_matrix(), ShapeError);
}

TEST_CASE("dense plumbing sanity") {
    const DenseMatrix a(2, 3, {1, 4, 2, 5, 3, 6}); // [[1,2,3],[4,5,6]]
    const DenseMatrix at = transpose(a);
    CHECK(at.rows() == 3);
    CHECK(at(0, 1) == 4.0);

    const DenseMatrix b(3, 1, {1, 1, 1});
    const DenseMatrix ab = matmul(a, b);
    CHECK(ab(0, 0) == 6.0);
    CHECK(ab(1, 0) == 15.0);
    CHECK_THROWS_AS(matmul(a, DenseMatrix(2, 2)), ShapeError);

    const std::vector<double> x{1, 1, 1};
    const auto y = matvec(a, x);
    CHECK(y[0] == 6.0);
    CHECK(y[1] == 15.0);

    const std::vector<double> u{1, 2}, v{3, 5};
    const DenseMatrix ouv = outer(u, v);
    CHECK(ouv(1, 1) == 10.0);

    CHECK_THROWS_AS(checked_mul(std::numeric_limits<std::size_t>::max() / 2, 3),
                    SizeError);
}
