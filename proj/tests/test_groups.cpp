#include <doctest.h>

#include <map>

#include "emtor/groups.hpp"

using namespace emtor;

namespace {

// Independent expansion of a product of (1 + x^deg y^wt) factors by naive
// polynomial multiplication over a (degree, weight) -> coefficient map.
std::map<std::pair<int, int>, long>
oracle_exterior(const WeightedExteriorAlgebra& e) {
    std::map<std::pair<int, int>, long> poly{{{0, 0}, 1}};
    for (std::size_t i = 0; i < e.generator_degrees.size(); ++i) {
        std::map<std::pair<int, int>, long> next = poly;
        for (const auto& [key, c] : poly)
            next[{key.first + e.generator_degrees[i],
                  key.second + e.generator_weights[i]}] += c;
        poly = std::move(next);
    }
    return poly;
}

} // namespace

TEST_CASE("catalog degrees") {
    CHECK(catalog_lookup("torus:3").bg_generator_degrees ==
          std::vector<int>{2, 2, 2});
    CHECK(catalog_lookup("SL:2").bg_generator_degrees == std::vector<int>{4});
    CHECK(catalog_lookup("SL:4").bg_generator_degrees ==
          std::vector<int>{4, 6, 8});
    CHECK(catalog_lookup("GL:3").bg_generator_degrees ==
          std::vector<int>{2, 4, 6});
    CHECK(catalog_lookup("Sp:6").bg_generator_degrees ==
          std::vector<int>{4, 8, 12});
    CHECK(catalog_lookup("custom:[2,6]").bg_generator_degrees ==
          std::vector<int>{2, 6});
    CHECK(catalog_lookup("torus:0").bg_generator_degrees.empty());
}

TEST_CASE("bad group specs are rejected") {
    CHECK_THROWS_AS(catalog_lookup("E8"), UnknownGroup);
    CHECK_THROWS_AS(catalog_lookup("SL:0"), UnknownGroup);
    CHECK_THROWS_AS(catalog_lookup("Sp:3"), UnknownGroup);
    CHECK_THROWS_AS(catalog_lookup("torus:x"), UnknownGroup);
    CHECK_THROWS_AS(catalog_lookup("custom:[3]"), UnknownGroup);
    CHECK_THROWS_AS(catalog_lookup("custom:2,4"), UnknownGroup);
}

TEST_CASE("group cohomology degrees and weights") {
    const GroupData g = catalog_lookup("SL:3");
    const WeightedExteriorAlgebra e = group_cohomology(g);
    CHECK(e.generator_degrees == std::vector<int>{3, 5});
    CHECK(e.generator_weights == std::vector<int>{4, 6});
}

TEST_CASE("exterior expansion matches naive polynomial multiplication") {
    for (const std::string& name :
         {"torus:1", "torus:3", "SL:3", "GL:2", "Sp:4", "custom:[2,4,8]"}) {
        const WeightedExteriorAlgebra e =
            group_cohomology(catalog_lookup(name));
        const WeightedGradedVectorSpace w = expand_exterior(e);
        for (const auto& [key, c] : oracle_exterior(e))
            CHECK(w.dim(key.first, key.second) == c);
        long total = 0;
        for (const auto& [key, d] : w.dims) total += d;
        CHECK(total == (1L << e.generator_degrees.size()));
    }
}

TEST_CASE("classifying space series is pure") {
    const WeightedGradedVectorSpace w =
        classifying_space_series(catalog_lookup("torus:2"), 8);
    CHECK(w.is_pure());
    CHECK(w.dim(0, 0) == 1);
    CHECK(w.dim(2, 2) == 2);
    CHECK(w.dim(8, 8) == 5);
    CHECK(w.total(3) == 0);
}

TEST_CASE("complexity filtration of a torus") {
    const GroupData g = catalog_lookup("torus:4");
    // degree-k part is spanned by k-fold products of degree-1 primitives
    CHECK(complexity_filtration(g, 2, 2) == 6);
    CHECK(complexity_filtration(g, 2, 1) == 0);
    CHECK(complexity_filtration(g, 0, 0) == 1);
    CHECK(complexity_filtration(g, 4, 4) == 1);
}

TEST_CASE("complexity filtration of SL(3)") {
    const GroupData g = catalog_lookup("SL:3");
    // H^8(SL3) = e3 e5, a product of two primitives
    CHECK(complexity_filtration(g, 8, 2) == 1);
    CHECK(complexity_filtration(g, 8, 1) == 0);
    CHECK(complexity_filtration(g, 3, 1) == 1);
}
