#include <doctest.h>

#include "emtor/graded.hpp"

using namespace emtor;

namespace {

// Independent count of monomials of a given degree: coefficient extraction
// from the product of geometric series, computed by naive convolution.
long oracle_monomial_count(const std::vector<int>& degs, int target) {
    std::vector<long> coeff(static_cast<std::size_t>(target) + 1, 0);
    coeff[0] = 1;
    for (int d : degs) {
        std::vector<long> next(coeff.size(), 0);
        for (std::size_t k = 0; k < coeff.size(); ++k)
            for (std::size_t j = k; j < coeff.size();
                 j += static_cast<std::size_t>(d))
                next[j] += coeff[k];
        coeff = std::move(next);
    }
    return coeff[static_cast<std::size_t>(target)];
}

} // namespace

TEST_CASE("enumerate_exponents matches the generating function") {
    const std::vector<std::vector<int>> rings = {
        {2}, {2, 2}, {2, 4}, {4, 6}, {2, 2, 2}};
    for (const auto& degs : rings)
        for (int target = 0; target <= 12; ++target) {
            const auto exps = enumerate_exponents(degs, target);
            CHECK(static_cast<long>(exps.size()) ==
                  oracle_monomial_count(degs, target));
            for (const auto& e : exps) {
                int sum = 0;
                for (std::size_t i = 0; i < e.size(); ++i)
                    sum += e[i] * degs[i];
                CHECK(sum == target);
            }
        }
    CHECK(enumerate_exponents({}, 0).size() == 1);
    CHECK(enumerate_exponents({}, 2).empty());
}

TEST_CASE("ring validation") {
    CHECK_THROWS_AS(PolynomialRingData{{3}}.validate(), ValidationError);
    CHECK_THROWS_AS(PolynomialRingData{{0}}.validate(), ValidationError);
    CHECK_NOTHROW(PolynomialRingData{{2, 4, 6}}.validate());
}

TEST_CASE("free and trivial modules validate") {
    const PolynomialRingData ring{{2, 4}};
    const GradedModule f = free_module(ring, {0, 2}, 10);
    CHECK(validate_module(f).ok);
    CHECK(f.dim(0) == 1);
    CHECK(f.dim(2) == 2); // t1*g0 and g1

    const GradedModule t = trivial_module(ring, 8);
    CHECK(validate_module(t).ok);
    CHECK(t.dim(0) == 1);
    CHECK(t.dim(2) == 0);
}

TEST_CASE("free module actions are injective") {
    const PolynomialRingData ring{{2, 2}};
    const GradedModule f = free_module(ring, {0, 0, 2}, 8);
    for (std::size_t i = 0; i < 2; ++i)
        for (int k = 0; k + 2 <= 8; ++k)
            CHECK(rank(f.action(i, k)) == static_cast<std::size_t>(f.dim(k)));
}

TEST_CASE("module validation catches broken actions") {
    const PolynomialRingData ring{{2, 2}};
    GradedModule f = free_module(ring, {0}, 6);
    // break commutativity: t1 then t2 differs from t2 then t1
    f.actions[0][0](0, 0) = 5;
    const auto rep = validate_module(f);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("truncate and act_monomial") {
    const PolynomialRingData ring{{2}};
    const GradedModule f = free_module(ring, {0}, 10);
    const GradedModule t = truncate(f, 6);
    CHECK(t.truncation == 6);
    CHECK(validate_module(t).ok);
    CHECK_THROWS_AS(truncate(t, 8), TruncationExceeded);

    const RatMatrix sq = act_monomial(f, {2}, 0); // t^2 from degree 0
    CHECK(sq.rows() == 1);
    CHECK(sq(0, 0) == 1);
    CHECK_THROWS_AS(act_monomial(f, {6}, 0), TruncationExceeded);
}

TEST_CASE("poincare series respects truncation") {
    GradedVectorSpace v;
    v.truncation = 4;
    v.dims[0] = 1;
    v.dims[3] = 2;
    const auto c = poincare_series(v, 4);
    CHECK(c == std::vector<long>{1, 0, 0, 2, 0});
    CHECK_THROWS_AS(poincare_series(v, 5), TruncationExceeded);
}

TEST_CASE("weighted space enforces n <= weight <= 2n") {
    WeightedGradedVectorSpace w;
    w.set(3, 4, 1);
    CHECK(w.dim(3, 4) == 1);
    CHECK(w.total(3) == 1);
    CHECK_FALSE(w.is_pure());
    CHECK_THROWS_AS(w.set(3, 2, 1), ValidationError);
    CHECK_THROWS_AS(w.set(3, 7, 1), ValidationError);
    w.set(3, 3, 2);
    CHECK(w.total(3) == 3);
}

TEST_CASE("polynomial algebra basis") {
    const GradedAlgebra a = polynomial_algebra(PolynomialRingData{{2, 2}}, 8);
    CHECK(a.dim(0) == 1);
    CHECK(a.dim(2) == 2);
    CHECK(a.dim(8) == 5);
    CHECK(a.dim(3) == 0);
    CHECK(a.index(2, {0, 1}) < 2);
}
