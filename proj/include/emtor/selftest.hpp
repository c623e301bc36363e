#ifndef EMTOR_SELFTEST_HPP
#define EMTOR_SELFTEST_HPP

// End-to-end self verification: one function per acceptance criterion,
// each returning a pass/fail verdict with a short diagnostic. Input
// fixtures (fans, orbit stratifications) are loaded from a data directory;
// randomized checks are seeded and reproducible.

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"
#include "emtor/groups.hpp"
#include "emtor/json_io.hpp"
#include "emtor/random_gen.hpp"
#include "emtor/spectral.hpp"
#include "emtor/strata.hpp"
#include "emtor/tor.hpp"
#include "emtor/toric.hpp"

namespace emtor {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelftestReport {
    std::vector<CriterionResult> results;
    bool all_pass = true;

    void add(CriterionResult r) {
        all_pass = all_pass && r.pass;
        results.push_back(std::move(r));
    }
};

namespace selftest_detail {

inline long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

inline std::string show_entry(int a, int b, long got, long want) {
    std::ostringstream os;
    os << "(" << a << "," << b << "): got " << got << ", want " << want;
    return os.str();
}

// shared state across criteria: criterion 6 recomputes criterion 1's
// instances, criterion 8 certifies the tables from criteria 2-4
struct Context {
    unsigned seed = 0;
    std::string data_dir;

    // criterion 1 instances, generated at truncation D + 4
    std::vector<GradedModule> instances;
    std::vector<int> instance_bound; // D per instance

    std::vector<BigradedTor> tables; // every table, for criterion 5

    // pure pipeline runs from criteria 2-4: label -> (ring, module, table)
    struct PureRun {
        std::string label;
        GradedModule module; // truncated input, over its ring
        BigradedTor table;
    };
    std::vector<PureRun> pure_runs;
};

inline Fan load_fan(const Context& ctx, const std::string& name) {
    return fan_from_json(load_json_file(ctx.data_dir + "/" + name + ".json"));
}

inline OrbitStratification load_strata(const Context& ctx,
                                       const std::string& name, int up_to) {
    return stratification_from_json(
        load_json_file(ctx.data_dir + "/" + name + ".json"), up_to);
}

} // namespace selftest_detail

// 1. koszul, bar and resolution Tor agree on randomized modules with
// trivial second argument.
inline CriterionResult
criterion_method_agreement(selftest_detail::Context& ctx) {
    CriterionResult res{1, "three-method Tor agreement", true, ""};
    std::mt19937 rng(ctx.seed);

    struct Shape {
        int vars, truncation;
        long max_dim;
        int count;
    };
    const std::vector<Shape> shapes = {
        {1, 12, 4, 30}, {2, 10, 3, 12}, {3, 8, 2, 8}};

    int total = 0;
    for (const Shape& s : shapes)
        for (int i = 0; i < s.count; ++i) {
            PolynomialRingData ring;
            ring.generator_degrees.assign(static_cast<std::size_t>(s.vars),
                                          2);
            const GradedModule full =
                random_module(rng, ring, s.truncation + 4, s.max_dim);
            ctx.instances.push_back(full);
            ctx.instance_bound.push_back(s.truncation);

            const GradedModule m = truncate(full, s.truncation);
            const GradedAlgebra a = polynomial_algebra(ring, s.truncation);
            const GradedModule triv = trivial_module(ring, s.truncation);

            const BigradedTor k = koszul_tor(m, s.truncation);
            const BigradedTor b = bar_tor(m, a, triv, s.truncation);
            const SmithResolution r =
                smith_resolution(m, s.truncation / 2);
            const BigradedTor sm =
                tor_from_resolution(r, triv, s.truncation - 4);
            ctx.tables.push_back(k);
            ctx.tables.push_back(b);
            ctx.tables.push_back(sm);

            const int q2 = s.truncation - 2; // koszul vs bar
            const int q3 = s.truncation - 4; // all three
            if (restrict_q(k, q2).dims != restrict_q(b, q2).dims) {
                res.pass = false;
                res.detail = "koszul != bar on instance " +
                             std::to_string(total);
                return res;
            }
            if (restrict_q(k, q3).dims != restrict_q(sm, q3).dims) {
                res.pass = false;
                res.detail = "koszul != resolution on instance " +
                             std::to_string(total);
                return res;
            }
            ++total;
        }
    res.detail = std::to_string(total) + " instances agree";
    return res;
}

// 2. Tor(Q, Q) over H^*(BG), assembled with weights, equals the exterior
// algebra on classes of degree 2d_i - 1 and weight 2d_i.
inline CriterionResult
criterion_free_action_cohomology(selftest_detail::Context& ctx) {
    CriterionResult res{2, "free-action group cohomology", true, ""};
    const std::vector<std::string> names = {"torus:1", "torus:2", "torus:3",
                                            "SL:2",    "SL:3",    "GL:2",
                                            "Sp:4"};
    const int bound = 24;
    for (const std::string& name : names) {
        const GroupData g = catalog_lookup(name);
        const PolynomialRingData ring = classifying_ring(g);
        const GradedModule triv = trivial_module(ring, bound);
        const BigradedTor t = koszul_tor(triv, bound);
        ctx.tables.push_back(t);
        ctx.pure_runs.push_back({name, triv, t});

        const WeightedGradedVectorSpace got = assemble_cohomology(t);
        const WeightedGradedVectorSpace want =
            expand_exterior(group_cohomology(g));
        if (got != want) {
            res.pass = false;
            res.detail = name + ": assembled cohomology differs from the "
                         "exterior algebra";
            return res;
        }
    }
    res.detail = std::to_string(names.size()) + " groups match";
    return res;
}

// 3. Complete smooth fans: even Betti numbers equal the h-vector, odd ones
// vanish, output is pure and Poincare-dual.
inline CriterionResult criterion_toric_betti(selftest_detail::Context& ctx) {
    CriterionResult res{3, "toric Betti/h-vector", true, ""};
    const std::vector<std::string> names = {
        "pp1",         "pp2",         "p1xp1",       "hirzebruch_0",
        "hirzebruch_1", "hirzebruch_2", "hirzebruch_3", "blowup_p2"};
    for (const std::string& name : names) {
        const Fan f = selftest_detail::load_fan(ctx, name);
        const int n = f.ambient_rank;
        const int bound = 2 * n + 2;
        const ToricCohomology tc = toric_cohomology(f, bound);
        ctx.tables.push_back(tc.tor);
        ctx.pure_runs.push_back(
            {name, stanley_reisner_module(f, bound), tc.tor});

        const auto fail = [&](const std::string& what) {
            res.pass = false;
            res.detail = name + ": " + what;
            return res;
        };
        if (!tc.smooth) return fail("expected smooth");
        if (!tc.complete) return fail("expected complete");
        if (!purity_check(tc.cohomology).pure) return fail("not pure");
        for (int k = 0; k <= bound; ++k) {
            const long b = tc.cohomology.total(k);
            if (k % 2 != 0 && b != 0) return fail("odd Betti nonzero");
            if (k > 2 * n && b != 0) return fail("Betti beyond dimension");
            if (k % 2 == 0 && k <= 2 * n &&
                b != tc.h[static_cast<std::size_t>(k / 2)])
                return fail(selftest_detail::show_entry(
                    k, 0, b, tc.h[static_cast<std::size_t>(k / 2)]));
        }
        for (int k = 0; k <= 2 * n; ++k)
            if (tc.cohomology.total(k) != tc.cohomology.total(2 * n - k))
                return fail("Poincare duality fails in degree " +
                            std::to_string(k));
    }
    res.detail = std::to_string(names.size()) + " fans verified";
    return res;
}

// 4. Punctured affine spaces and tori: the non-pure weight tables.
inline CriterionResult criterion_noncomplete_weights(
    selftest_detail::Context& ctx) {
    CriterionResult res{4, "non-complete weight tables", true, ""};
    const auto fail = [&](const std::string& what) {
        res.pass = false;
        res.detail = what;
        return res;
    };

    // C^n minus the origin: exactly H^0 (weight 0) and H^{2n-1} (weight 2n)
    const std::vector<std::string> punctured = {"cstar_1", "c2_minus_origin",
                                                "c3_minus_origin"};
    for (int n = 1; n <= 3; ++n) {
        const Fan f = selftest_detail::load_fan(
            ctx, punctured[static_cast<std::size_t>(n) - 1]);
        const int bound = 2 * n + 2;
        const ToricCohomology tc = toric_cohomology(f, bound);
        ctx.tables.push_back(tc.tor);
        ctx.pure_runs.push_back({punctured[static_cast<std::size_t>(n) - 1],
                                 stanley_reisner_module(f, bound), tc.tor});
        WeightedGradedVectorSpace want;
        want.set(0, 0, 1);
        want.set(2 * n - 1, 2 * n, 1);
        if (tc.cohomology != want)
            return fail("punctured C^" + std::to_string(n) +
                        ": wrong weight table");
    }

    // (C^*)^n: H^k of dimension C(n,k) in weight 2k, matching the
    // complexity filtration of the torus
    for (int n = 1; n <= 3; ++n) {
        const Fan f = selftest_detail::load_fan(
            ctx, "cstar_" + std::to_string(n));
        const int bound = 2 * n + 2;
        const ToricCohomology tc = toric_cohomology(f, bound);
        ctx.tables.push_back(tc.tor);
        WeightedGradedVectorSpace want;
        for (int k = 0; k <= n; ++k)
            want.set(k, 2 * k, selftest_detail::binom(n, k));
        if (tc.cohomology != want)
            return fail("torus of rank " + std::to_string(n) +
                        ": wrong weight table");
        const GroupData g = catalog_lookup("torus:" + std::to_string(n));
        for (int k = 0; k <= n; ++k) {
            if (complexity_filtration(g, k, k) !=
                selftest_detail::binom(n, k))
                return fail("complexity filtration mismatch at level " +
                            std::to_string(k));
            if (k > 0 && complexity_filtration(g, k, k - 1) != 0)
                return fail("complexity filtration nonzero below level");
        }
    }
    res.detail = "6 spaces verified";
    return res;
}

// 5. Every computed table satisfies dims(p,q) = 0 for q < 2p.
inline CriterionResult criterion_vanishing_bound(
    const selftest_detail::Context& ctx) {
    CriterionResult res{5, "vanishing bound q >= 2p", true, ""};
    for (const BigradedTor& t : ctx.tables)
        for (const auto& [key, d] : t.dims)
            if (d != 0 && (key.first < 0 || key.second < 2 * key.first)) {
                res.pass = false;
                res.detail = "violation at p=" + std::to_string(key.first) +
                             ", q=" + std::to_string(key.second);
                return res;
            }
    res.detail = std::to_string(ctx.tables.size()) + " tables scanned";
    return res;
}

// 6. Truncation stabilization: recomputing at D + 4 never changes
// trusted-range entries.
inline CriterionResult criterion_stabilization(
    selftest_detail::Context& ctx) {
    CriterionResult res{6, "truncation stabilization", true, ""};
    for (std::size_t i = 0; i < ctx.instances.size(); ++i) {
        const int d = ctx.instance_bound[i];
        const GradedModule& full = ctx.instances[i];
        const BigradedTor big = koszul_tor(full, d + 4);
        const BigradedTor small = koszul_tor(truncate(full, d), d);
        ctx.tables.push_back(big);
        const int trusted = small.trusted_q;
        if (restrict_q(big, trusted).dims != restrict_q(small, trusted).dims) {
            res.pass = false;
            res.detail = "instance " + std::to_string(i) +
                         " changed under larger truncation";
            return res;
        }
    }
    res.detail = std::to_string(ctx.instances.size()) + " instances stable";
    return res;
}

// 7. Spectral engine: convergence on random filtered complexes; on
// bar-filtered complexes E_2 equals bar Tor and everything degenerates.
inline CriterionResult criterion_spectral_convergence(
    selftest_detail::Context& ctx) {
    CriterionResult res{7, "spectral engine convergence", true, ""};
    std::mt19937 rng(ctx.seed + 1);
    std::uniform_int_distribution<int> len(1, 4);
    for (int i = 0; i < 50; ++i) {
        const FilteredComplex fc =
            random_filtered_complex(rng, 5, 5, len(rng));
        const SpectralSequence ss = pages(fc); // throws on any failure
        for (int n = 0; n <= fc.top_degree(); ++n) {
            long sum = 0;
            for (int s = 0; s < fc.filtration_length; ++s)
                sum += ss.infinity.dim(s, n);
            if (sum != ss.total_homology[static_cast<std::size_t>(n)]) {
                res.pass = false;
                res.detail = "E_infty total mismatch on random complex " +
                             std::to_string(i);
                return res;
            }
        }
    }

    // bar-filtered instances: trivial coefficients and random modules
    struct EmCase {
        GradedModule m;
        int bound;
        std::string label;
    };
    std::vector<EmCase> cases;
    {
        PolynomialRingData r1{{2}};
        cases.push_back({trivial_module(r1, 8), 8, "Q over Q[t]"});
        cases.push_back({random_module(rng, r1, 8, 2), 8, "random r=1 (a)"});
        cases.push_back({random_module(rng, r1, 8, 2), 8, "random r=1 (b)"});
        PolynomialRingData r2{{2, 2}};
        cases.push_back({trivial_module(r2, 6), 6, "Q over Q[t1,t2]"});
        cases.push_back({random_module(rng, r2, 6, 2), 6, "random r=2"});
    }
    for (const EmCase& c : cases) {
        const GradedAlgebra a = polynomial_algebra(c.m.ring, c.bound);
        const GradedModule triv = trivial_module(c.m.ring, c.bound);
        const EmFilteredComplex em =
            em_filtered_complex(c.m, a, triv, c.bound, true);
        const SpectralSequence ss = pages(em.fc);
        const BigradedTor bt = bar_tor(c.m, a, triv, c.bound);
        ctx.tables.push_back(bt);

        const Page& e2 =
            ss.pages.size() >= 2 ? ss.pages[1] : ss.pages.back();
        if (em_page_dims(e2, em.p_max) != bt.dims) {
            res.pass = false;
            res.detail = c.label + ": E_2 differs from bar Tor";
            return res;
        }
        for (const Page& p : ss.pages)
            if (p.r >= 2 && !p.differential_ranks.empty()) {
                res.pass = false;
                res.detail = c.label + ": nonzero d_" + std::to_string(p.r);
                return res;
            }
    }
    res.detail = "50 random complexes + " + std::to_string(cases.size()) +
                 " bar filtrations verified";
    return res;
}

// 8. Purity degeneration: the weight-mismatch certificate discharges all
// higher differentials and the direct page computation agrees.
inline CriterionResult criterion_degeneration_certificate(
    selftest_detail::Context& ctx) {
    CriterionResult res{8, "purity degeneration certificate", true, ""};
    const int page_bound = 6; // direct page runs at a reduced truncation
    for (const auto& run : ctx.pure_runs) {
        const DegenerationCertificate cert =
            degeneration_certificate(run.table, true, true, true);
        if (!cert.all_discharged) {
            res.pass = false;
            res.detail = run.label + ": certificate not discharged";
            return res;
        }
        const int bound = std::min(page_bound, run.module.truncation);
        const GradedModule m = truncate(run.module, bound);
        const GradedAlgebra a = polynomial_algebra(m.ring, bound);
        const GradedModule triv = trivial_module(m.ring, bound);
        const EmFilteredComplex em =
            em_filtered_complex(m, a, triv, bound, true);
        const SpectralSequence ss = pages(em.fc);
        for (const Page& p : ss.pages)
            if (p.r >= 2 && !p.differential_ranks.empty()) {
                res.pass = false;
                res.detail = run.label + ": pages found a nonzero d_" +
                             std::to_string(p.r);
                return res;
            }
    }
    res.detail = std::to_string(ctx.pure_runs.size()) +
                 " pure runs certified and recomputed";
    return res;
}

// 9. Orbit stratification series equals the Stanley-Reisner Poincare
// series for toric test spaces.
inline CriterionResult criterion_strata_toric_crosscheck(
    selftest_detail::Context& ctx) {
    CriterionResult res{9, "strata/toric series cross-check", true, ""};
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"p1_orbits", "pp1"}, {"p2_orbits", "pp2"},
        {"p1xp1_orbits", "p1xp1"}};
    const int bound = 20;
    for (const auto& [strata_name, fan_name] : pairs) {
        const OrbitStratification s =
            selftest_detail::load_strata(ctx, strata_name, bound);
        const WeightedGradedVectorSpace series = equivariant_series(s, bound);
        const Fan f = selftest_detail::load_fan(ctx, fan_name);
        const GradedModule sr = stanley_reisner_module(f, bound);
        for (int n = 0; n <= bound; ++n)
            if (series.total(n) != sr.dim(n)) {
                res.pass = false;
                res.detail = strata_name + " vs " + fan_name + ": " +
                             selftest_detail::show_entry(n, 0,
                                                         series.total(n),
                                                         sr.dim(n));
                return res;
            }
    }
    res.detail = std::to_string(pairs.size()) + " space pairs agree";
    return res;
}

inline SelftestReport run_selftest(unsigned seed,
                                   const std::string& data_dir) {
    selftest_detail::Context ctx;
    ctx.seed = seed;
    ctx.data_dir = data_dir;

    SelftestReport report;
    report.add(criterion_method_agreement(ctx));
    report.add(criterion_free_action_cohomology(ctx));
    report.add(criterion_toric_betti(ctx));
    report.add(criterion_noncomplete_weights(ctx));
    report.add(criterion_stabilization(ctx));          // fills more tables
    report.add(criterion_spectral_convergence(ctx));   // before the scan
    report.add(criterion_degeneration_certificate(ctx));
    report.add(criterion_strata_toric_crosscheck(ctx));
    report.add(criterion_vanishing_bound(ctx));
    std::sort(report.results.begin(), report.results.end(),
              [](const CriterionResult& a, const CriterionResult& b) {
                  return a.id < b.id;
              });
    return report;
}

} // namespace emtor

#endif
