#include <doctest.h>

#include "emtor/json_io.hpp"
#include "emtor/strata.hpp"
#include "emtor/toric.hpp"

using namespace emtor;

namespace {

Orbit orbit(const std::string& label, int codim, const std::string& group,
            int up_to) {
    return Orbit{label, codim,
                 classifying_space_series(catalog_lookup(group), up_to)};
}

} // namespace

TEST_CASE("single free orbit gives Q in degree 0") {
    OrbitStratification s;
    s.orbits.push_back(orbit("open", 0, "torus:0", 10));
    const WeightedGradedVectorSpace w = equivariant_series(s, 10);
    CHECK(w.dim(0, 0) == 1);
    CHECK(w.dims.size() == 1);
}

TEST_CASE("C under C*: series equals the classifying space of the torus") {
    OrbitStratification s;
    s.orbits.push_back(orbit("open", 0, "torus:0", 12));
    s.orbits.push_back(orbit("origin", 1, "torus:1", 12));
    const WeightedGradedVectorSpace w = equivariant_series(s, 12);
    CHECK(w == classifying_space_series(catalog_lookup("torus:1"), 12));
}

TEST_CASE("stratification validation") {
    OrbitStratification no_open;
    no_open.orbits.push_back(orbit("closed", 1, "torus:1", 6));
    CHECK_THROWS_AS(validate_stratification(no_open), ValidationError);

    OrbitStratification impure;
    Orbit bad = orbit("open", 0, "torus:1", 6);
    bad.stabilizer_series.set(3, 4, 1);
    impure.orbits.push_back(bad);
    CHECK_THROWS_AS(validate_stratification(impure), ImpureInput);
}

TEST_CASE("P^1 orbit series equals the Stanley-Reisner series") {
    const OrbitStratification s = stratification_from_json(
        load_json_file(std::string(EMTOR_DATA_DIR) + "/p1_orbits.json"), 16);
    const WeightedGradedVectorSpace w = equivariant_series(s, 16);
    CHECK(w.is_pure());
    const Fan f = fan_from_json(
        load_json_file(std::string(EMTOR_DATA_DIR) + "/pp1.json"));
    const GradedModule sr = stanley_reisner_module(f, 16);
    for (int n = 0; n <= 16; ++n) CHECK(w.total(n) == sr.dim(n));
}

TEST_CASE("fibration series") {
    WeightedGradedVectorSpace point;
    point.set(0, 0, 1);
    const WeightedGradedVectorSpace bh =
        classifying_space_series(catalog_lookup("torus:1"), 10);
    CHECK(fibration_series(point, bh, 10) == bh);

    WeightedGradedVectorSpace base;
    base.set(0, 0, 1);
    base.set(2, 2, 1);
    const WeightedGradedVectorSpace prod = fibration_series(base, bh, 10);
    CHECK(prod.dim(0, 0) == 1);
    CHECK(prod.dim(2, 2) == 2);
    CHECK(prod.dim(10, 10) == 2);

    // commutative and associative
    CHECK(fibration_series(base, bh, 10) == fibration_series(bh, base, 10));
    CHECK(fibration_series(fibration_series(base, bh, 8), bh, 8) ==
          fibration_series(base, fibration_series(bh, bh, 8), 8));

    WeightedGradedVectorSpace impure;
    impure.set(3, 4, 1);
    CHECK_THROWS_AS(fibration_series(impure, bh, 8), ImpureInput);
}

TEST_CASE("recover_from_strata on a free action") {
    // X = G for G = C^*: one free orbit; the module is Q over Q[t]
    OrbitStratification s;
    s.orbits.push_back(orbit("open", 0, "torus:0", 12));
    const GroupData g = catalog_lookup("torus:1");
    const GradedModule triv = trivial_module(classifying_ring(g), 12);
    const StrataRecovery rec = recover_from_strata(s, g, triv, 12);
    CHECK(rec.cohomology == expand_exterior(group_cohomology(g)));
    CHECK(rec.certificate_discharged);
}

TEST_CASE("recover_from_strata rejects mismatched modules") {
    OrbitStratification s;
    s.orbits.push_back(orbit("open", 0, "torus:0", 12));
    s.orbits.push_back(orbit("origin", 1, "torus:1", 12));
    const GroupData g = catalog_lookup("torus:1");
    // trivial module has the wrong series (misses degrees 2, 4, ...)
    const GradedModule triv = trivial_module(classifying_ring(g), 12);
    CHECK_THROWS_AS(recover_from_strata(s, g, triv, 12),
                    SeriesModuleMismatch);

    // wrong ring
    const GroupData g2 = catalog_lookup("torus:2");
    const GradedModule triv2 = trivial_module(classifying_ring(g2), 12);
    OrbitStratification free_orbit;
    free_orbit.orbits.push_back(orbit("open", 0, "torus:0", 12));
    CHECK_THROWS_AS(recover_from_strata(free_orbit, g, triv2, 12),
                    SeriesModuleMismatch);
}

TEST_CASE("recover_from_strata through the toric module") {
    // P^1 with the Stanley-Reisner module over H^*(B(C^*)^1)? The fan of
    // P^1 lives in rank 1, so the acting torus is 1-dimensional.
    const Fan f = fan_from_json(
        load_json_file(std::string(EMTOR_DATA_DIR) + "/pp1.json"));
    const GradedModule sr = stanley_reisner_module(f, 12);
    const OrbitStratification s = stratification_from_json(
        load_json_file(std::string(EMTOR_DATA_DIR) + "/p1_orbits.json"), 12);
    const GroupData g = catalog_lookup("torus:1");
    const StrataRecovery rec = recover_from_strata(s, g, sr, 12);
    WeightedGradedVectorSpace want;
    want.set(0, 0, 1);
    want.set(2, 2, 1);
    CHECK(rec.cohomology == want);
    CHECK(rec.certificate_discharged);
}
