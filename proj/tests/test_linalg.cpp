#include <doctest.h>

#include <random>

#include "emtor/linalg.hpp"

using namespace emtor;

namespace {

// Independent rank oracle: row echelon via leftmost-pivot scan per row,
// no normalization, deliberately coded differently from rref_inplace.
std::size_t oracle_rank(RatMatrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t piv = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m(piv, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            const Rat f = m(i, col) / m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

RatMatrix random_matrix(std::mt19937& rng, std::size_t rows,
                        std::size_t cols) {
    std::uniform_int_distribution<int> d(-3, 3);
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

RatMatrix random_invertible(std::mt19937& rng, std::size_t n) {
    for (;;) {
        RatMatrix m = random_matrix(rng, n, n);
        if (rank(m) == n) return m;
    }
}

} // namespace

TEST_CASE("rank on fixed matrices") {
    CHECK(rank(RatMatrix(0, 0)) == 0);
    CHECK(rank(RatMatrix::identity(3)) == 3);
    RatMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK(rank(m) == 1);
}

TEST_CASE("rank agrees with the oracle and with the transpose") {
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        const RatMatrix m = random_matrix(rng, 1 + i % 6, 1 + (i * 7) % 6);
        const std::size_t r = rank(m);
        CHECK(r == oracle_rank(m));
        CHECK(r == rank(m.transposed()));
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(RatMatrix::identity(4)).cols() == 0);
    CHECK(kernel_basis(RatMatrix(2, 3)).cols() == 3);
    RatMatrix m(1, 2);
    m(0, 0) = 1;
    m(0, 1) = 1;
    const RatMatrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == -k(1, 0));
    CHECK(k(0, 0) != 0);
}

TEST_CASE("cols = rank + nullity") {
    std::mt19937 rng(12);
    for (int i = 0; i < 30; ++i) {
        const RatMatrix m = random_matrix(rng, i % 5, (i * 3) % 7);
        CHECK(m.cols() == rank(m) + kernel_basis(m).cols());
        const RatMatrix k = kernel_basis(m);
        if (k.cols() > 0 && m.rows() > 0) CHECK((m * k).is_zero());
    }
}

TEST_CASE("homology_dim basics") {
    CHECK(homology_dim(RatMatrix(5, 2), RatMatrix(3, 5)) == 5 - 0 - 0);
    CHECK(homology_dim(RatMatrix::identity(3), RatMatrix(0, 3)) == 0);
    RatMatrix bad_in = RatMatrix::identity(2);
    RatMatrix bad_out = RatMatrix::identity(2);
    CHECK_THROWS_AS(homology_dim(bad_in, bad_out), CompositionNotZero);
}

TEST_CASE("homology_dim is basis independent") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        // random three-term complex: d_out = R * L with L annihilating d_in
        const RatMatrix d_in = random_matrix(rng, 6, 3);
        const RatMatrix l = kernel_basis(d_in.transposed()).transposed();
        const RatMatrix d_out = random_matrix(rng, 4, l.rows()) * l;
        const std::size_t h = homology_dim(d_in, d_out);

        const RatMatrix q = random_invertible(rng, 6);
        const auto qinv = solve(q, RatMatrix::identity(6));
        REQUIRE(qinv.has_value());
        CHECK(homology_dim(q * d_in, d_out * *qinv) == h);
    }
}

TEST_CASE("solve") {
    std::mt19937 rng(14);
    const RatMatrix a = random_matrix(rng, 4, 3);
    const RatMatrix x = random_matrix(rng, 3, 2);
    const auto sol = solve(a, a * x);
    REQUIRE(sol.has_value());
    CHECK(a * *sol == a * x);

    // inconsistent system
    RatMatrix zero(2, 1);
    RatMatrix b(2, 1);
    b(0, 0) = 1;
    CHECK_FALSE(solve(zero, b).has_value());
}

TEST_CASE("subspace helpers") {
    std::mt19937 rng(15);
    const RatMatrix m = random_matrix(rng, 4, 5);
    const RatMatrix s = random_matrix(rng, 4, 2);
    const RatMatrix pre = preimage(m, s);
    // every preimage column maps into col(s)
    const RatMatrix img = m * pre;
    CHECK(rank(hstack(s, img)) == rank(s));

    const RatMatrix a = random_matrix(rng, 5, 3);
    const RatMatrix b = random_matrix(rng, 5, 3);
    const RatMatrix cap = intersect_spaces(a, b);
    CHECK(rank(hstack(a, cap)) == rank(a));
    CHECK(rank(hstack(b, cap)) == rank(b));
    CHECK(rank(a) + rank(b) == rank(hstack(a, b)) + rank(cap));
}
