#include <doctest.h>

#include <random>

#include "emtor/random_gen.hpp"
#include "emtor/spectral.hpp"

using namespace emtor;

TEST_CASE("trivial filtration gives total homology on page one") {
    // 0 -> Q^2 -d-> Q^2 -> 0 with d of rank 1
    FilteredComplex fc;
    fc.dims = {2, 2};
    RatMatrix d(2, 2);
    d(0, 0) = 1;
    d(0, 1) = 1;
    fc.d = {d};
    fc.filtration_length = 1;

    const SpectralSequence ss = pages(fc);
    REQUIRE(ss.pages.size() == 1);
    CHECK(ss.pages[0].dim(0, 0) == 1);
    CHECK(ss.pages[0].dim(0, 1) == 1);
    CHECK(ss.total_homology == std::vector<long>{1, 1});
    CHECK(ss.pages[0].differential_ranks.empty());
}

TEST_CASE("two-step filtration of an acyclic complex collapses") {
    // 0 -> Q -id-> Q -> 0, filtered by the image in degree 1
    FilteredComplex fc;
    fc.dims = {1, 1};
    fc.d = {RatMatrix::identity(1)};
    fc.filtration_length = 2;
    fc.filt.resize(1);
    fc.filt[0].push_back(RatMatrix(1, 0));           // F^1 C^0 = 0
    fc.filt[0].push_back(RatMatrix::identity(1));    // F^1 C^1 = C^1

    const SpectralSequence ss = pages(fc);
    CHECK(ss.total_homology == std::vector<long>{0, 0});
    for (int n = 0; n < 2; ++n) {
        long sum = 0;
        for (int s = 0; s < 2; ++s) sum += ss.infinity.dim(s, n);
        CHECK(sum == 0);
    }
    // E_1 is nonzero but d_1 kills everything
    CHECK(ss.pages[0].dim(1, 1) == 1);
    CHECK(ss.pages[0].dim(0, 0) == 1);
    CHECK_FALSE(ss.pages[0].differential_ranks.empty());
}

TEST_CASE("non-closed filtrations are rejected") {
    FilteredComplex fc;
    fc.dims = {1, 1};
    fc.d = {RatMatrix::identity(1)};
    fc.filtration_length = 2;
    fc.filt.resize(1);
    fc.filt[0].push_back(RatMatrix::identity(1)); // F^1 C^0 = C^0
    fc.filt[0].push_back(RatMatrix(1, 0));        // but F^1 C^1 = 0
    CHECK_THROWS_AS(pages(fc), InvalidFiltration);
}

TEST_CASE("d*d != 0 is rejected") {
    FilteredComplex fc;
    fc.dims = {1, 1, 1};
    fc.d = {RatMatrix::identity(1), RatMatrix::identity(1)};
    fc.filtration_length = 1;
    CHECK_THROWS_AS(pages(fc), CompositionNotZero);
}

TEST_CASE("bar filtration of Q over Q[t]") {
    const PolynomialRingData ring{{2}};
    const GradedModule triv = trivial_module(ring, 6);
    const GradedAlgebra a = polynomial_algebra(ring, 6);
    const EmFilteredComplex em =
        em_filtered_complex(triv, a, triv, 6, true);
    const SpectralSequence ss = pages(em.fc);

    // E_1 = bar chain groups
    const BarComplex bc = build_bar_complex(triv, a, triv, 6);
    const auto e1 = em_page_dims(ss.pages[0], em.p_max);
    for (const auto& [key, d] : e1)
        CHECK(d == static_cast<long>(bc.size(key.first, key.second)));

    // E_2 = Tor, and everything stabilizes there
    REQUIRE(ss.pages.size() >= 2);
    const auto e2 = em_page_dims(ss.pages[1], em.p_max);
    const BigradedTor bt = bar_tor(triv, a, triv, 6);
    CHECK(e2 == bt.dims);
    for (const Page& p : ss.pages)
        if (p.r >= 2) CHECK(p.differential_ranks.empty());
    CHECK(em_page_dims(ss.infinity, em.p_max) == bt.dims);
}

TEST_CASE("random filtered complexes converge") {
    std::mt19937 rng(31);
    for (int i = 0; i < 15; ++i) {
        const FilteredComplex fc = random_filtered_complex(rng, 4, 4, 3);
        const SpectralSequence ss = pages(fc); // internal asserts throw
        for (int n = 0; n <= fc.top_degree(); ++n) {
            long sum = 0;
            for (int s = 0; s < fc.filtration_length; ++s)
                sum += ss.infinity.dim(s, n);
            CHECK(sum == ss.total_homology[static_cast<std::size_t>(n)]);
        }
    }
}

TEST_CASE("degeneration certificate") {
    BigradedTor t;
    t.set(0, 0, 1);
    t.set(2, 4, 1); // potential d_2 target of nothing; source of (0, 3)?
    t.set(0, 3, 1); // d_2: (2,4) -> (0,3) has weight drop 1
    const DegenerationCertificate cert =
        degeneration_certificate(t, true, true, true);
    CHECK(cert.all_discharged);
    REQUIRE(cert.entries.size() == 1);
    CHECK(cert.entries[0].r == 2);
    CHECK(cert.entries[0].weight_source == 4);
    CHECK(cert.entries[0].weight_target == 3);

    CHECK_THROWS_AS(degeneration_certificate(t, true, false, true),
                    ImpureInput);

    BigradedTor empty;
    CHECK(degeneration_certificate(empty, true, true, true).entries.empty());
}
