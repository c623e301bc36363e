#include <doctest.h>

#include <algorithm>

#include "emtor/json_io.hpp"
#include "emtor/toric.hpp"

using namespace emtor;

namespace {

Fan p2_fan() {
    Fan f;
    f.ambient_rank = 2;
    f.rays = {{1, 0}, {0, 1}, {-1, -1}};
    f.max_cones = {{0, 1}, {1, 2}, {2, 0}};
    return f;
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long b = 1;
    for (long i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

// Independent Stanley-Reisner dimension count: for each admissible support
// S there are C(k-1, |S|-1) monomials of exponent sum k with that exact
// support.
long oracle_sr_dim(const Fan& f, int degree2k) {
    if (degree2k % 2 != 0) return 0;
    const long k = degree2k / 2;
    if (k == 0) return 1;
    long total = 0;
    const std::size_t nrays = f.rays.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << nrays); ++mask) {
        std::vector<int> supp;
        for (std::size_t i = 0; i < nrays; ++i)
            if (mask & (std::size_t{1} << i)) supp.push_back(static_cast<int>(i));
        bool in_cone = false;
        for (const auto& cone : f.max_cones)
            in_cone = in_cone ||
                      std::all_of(supp.begin(), supp.end(), [&](int r) {
                          return std::find(cone.begin(), cone.end(), r) !=
                                 cone.end();
                      });
        if (in_cone)
            total += binom(k - 1, static_cast<long>(supp.size()) - 1);
    }
    return total;
}

} // namespace

TEST_CASE("fan validation") {
    Fan f = p2_fan();
    CHECK_NOTHROW(validate_fan(f));

    Fan nonprim = p2_fan();
    nonprim.rays[0] = {2, 0};
    CHECK_THROWS_AS(validate_fan(nonprim), ValidationError);

    Fan dup = p2_fan();
    dup.rays[2] = {1, 0};
    CHECK_THROWS_AS(validate_fan(dup), ValidationError);

    Fan dependent;
    dependent.ambient_rank = 2;
    dependent.rays = {{1, 0}, {-1, 0}};
    dependent.max_cones = {{0, 1}};
    CHECK_THROWS_AS(validate_fan(dependent), NonSimplicialFan);

    // a ray inside a 2-cone: the cones do not meet in a common face
    Fan overlap;
    overlap.ambient_rank = 2;
    overlap.rays = {{1, 0}, {0, 1}, {1, 2}};
    overlap.max_cones = {{0, 1}, {2}};
    CHECK_THROWS_AS(validate_fan(overlap), ValidationError);
}

TEST_CASE("smoothness") {
    CHECK(is_smooth(p2_fan()));

    Fan singular;
    singular.ambient_rank = 2;
    singular.rays = {{1, 0}, {1, 2}};
    singular.max_cones = {{0, 1}};
    CHECK_FALSE(is_smooth(singular)); // index-2 quotient singularity

    Fan empty;
    empty.ambient_rank = 2;
    CHECK(is_smooth(empty));
}

TEST_CASE("completeness") {
    CHECK(is_complete(p2_fan()));

    Fan c2;
    c2.ambient_rank = 2;
    c2.rays = {{1, 0}, {0, 1}};
    c2.max_cones = {{0, 1}};
    CHECK_FALSE(is_complete(c2));

    Fan p1xp1;
    p1xp1.ambient_rank = 2;
    p1xp1.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    p1xp1.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CHECK(is_complete(p1xp1));
}

TEST_CASE("h-vectors") {
    CHECK(h_vector(p2_fan()) == std::vector<long>{1, 1, 1});

    Fan p1xp1;
    p1xp1.ambient_rank = 2;
    p1xp1.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    p1xp1.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CHECK(h_vector(p1xp1) == std::vector<long>{1, 2, 1});
}

TEST_CASE("Stanley-Reisner dimensions") {
    const GradedModule sr = stanley_reisner_module(p2_fan(), 8);
    CHECK(sr.dim(0) == 1);
    CHECK(sr.dim(2) == 3);
    CHECK(sr.dim(4) == 6);
    CHECK(validate_module(sr).ok);
    for (int k = 0; k <= 8; ++k)
        CHECK(sr.dim(k) == oracle_sr_dim(p2_fan(), k));

    // punctured plane: monomials supported on a single ray
    Fan c2mo;
    c2mo.ambient_rank = 2;
    c2mo.rays = {{1, 0}, {0, 1}};
    c2mo.max_cones = {{0}, {1}};
    const GradedModule sr2 = stanley_reisner_module(c2mo, 8);
    CHECK(sr2.dim(0) == 1);
    for (int k = 1; k <= 4; ++k) CHECK(sr2.dim(2 * k) == 2);

    // fan with only the zero cone: the trivial module
    Fan torus;
    torus.ambient_rank = 1;
    const GradedModule sr3 = stanley_reisner_module(torus, 6);
    CHECK(sr3.dim(0) == 1);
    CHECK(sr3.dim(2) == 0);
}

TEST_CASE("relabeling rays changes nothing") {
    Fan f = p2_fan();
    Fan g;
    g.ambient_rank = 2;
    g.rays = {f.rays[2], f.rays[0], f.rays[1]}; // permute by +1
    g.max_cones = {{1, 2}, {2, 0}, {0, 1}};
    CHECK(h_vector(f) == h_vector(g));
    CHECK(is_smooth(g));
    CHECK(is_complete(g));
    const ToricCohomology a = toric_cohomology(f, 6);
    const ToricCohomology b = toric_cohomology(g, 6);
    CHECK(a.cohomology == b.cohomology);
}

TEST_CASE("toric pipeline on the projective plane") {
    const ToricCohomology tc = toric_cohomology(p2_fan(), 6);
    CHECK(tc.smooth);
    CHECK(tc.complete);
    WeightedGradedVectorSpace want;
    want.set(0, 0, 1);
    want.set(2, 2, 1);
    want.set(4, 4, 1);
    CHECK(tc.cohomology == want);
}

TEST_CASE("toric pipeline on the punctured plane") {
    const Fan f = fan_from_json(
        load_json_file(std::string(EMTOR_DATA_DIR) + "/c2_minus_origin.json"));
    const ToricCohomology tc = toric_cohomology(f, 6);
    CHECK(tc.smooth);
    CHECK_FALSE(tc.complete);
    WeightedGradedVectorSpace want;
    want.set(0, 0, 1);
    want.set(3, 4, 1);
    CHECK(tc.cohomology == want);
}
