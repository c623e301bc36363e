#ifndef EMTOR_RANDOM_GEN_HPP
#define EMTOR_RANDOM_GEN_HPP

// Seeded random instances for property tests: graded modules built as
// quotients of free modules (so the actions commute by construction) and
// filtered cochain complexes with differential-closed random filtrations.

#include <random>
#include <vector>

#include "emtor/graded.hpp"
#include "emtor/linalg.hpp"
#include "emtor/spectral.hpp"

namespace emtor {

// Quotient of a free module by the submodule generated by random elements,
// with relations added until every degree has dimension <= max_dim. The
// result is an honest module, so the generator actions commute.
inline GradedModule random_module(std::mt19937& rng,
                                  const PolynomialRingData& ring,
                                  int truncation, long max_dim) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<int> small(-2, 2);

    std::vector<int> gen_degrees;
    std::uniform_int_distribution<int> ngens(1, 4);
    const int g = ngens(rng);
    std::uniform_int_distribution<int> gdeg(0, std::min(truncation, 4));
    for (int i = 0; i < g; ++i) gen_degrees.push_back(2 * (gdeg(rng) / 2));

    const FreeModuleBasis fb = make_free_basis(ring, gen_degrees, truncation);
    const GradedModule fmod = fb.to_module();

    // submodule span per degree, grown until the quotient is small enough
    std::vector<RatMatrix> span;
    for (int k = 0; k <= truncation; ++k)
        span.emplace_back(static_cast<std::size_t>(fmod.dim(k)), 0);

    // replace a spanning matrix by an independent column basis
    const auto compress = [](const RatMatrix& s) {
        RatMatrix work = s.transposed();
        const std::size_t r = rref_inplace(work).size();
        RatMatrix out(s.rows(), r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s.rows(); ++j)
                out(j, i) = work(i, j);
        return out;
    };

    const auto close_under_action = [&]() {
        for (int k = 0; k <= truncation; ++k) {
            span[static_cast<std::size_t>(k)] =
                compress(span[static_cast<std::size_t>(k)]);
            for (std::size_t i = 0; i < ring.generator_degrees.size(); ++i) {
                const int d = ring.generator_degrees[i];
                if (k + d > truncation) continue;
                auto& tgt = span[static_cast<std::size_t>(k) + d];
                tgt = hstack(tgt, fmod.action(i, k) *
                                      span[static_cast<std::size_t>(k)]);
            }
        }
    };

    // a few unconditional relations so quotients are rarely free, then
    // more until every degree fits under the cap
    std::uniform_int_distribution<int> nrel(1, 3);
    int forced = nrel(rng);
    for (int guard = 0; guard < 200; ++guard) {
        bool too_big = forced > 0;
        for (int k = 0; k <= truncation && !too_big; ++k)
            too_big = fmod.dim(k) - static_cast<long>(rank(
                          span[static_cast<std::size_t>(k)])) > max_dim;
        if (!too_big) break;
        // add a random element in a random degree and close up
        std::uniform_int_distribution<int> pick_deg(0, truncation);
        const int k = pick_deg(rng);
        if (fmod.dim(k) == 0) continue;
        RatMatrix v(static_cast<std::size_t>(fmod.dim(k)), 1);
        for (std::size_t i = 0; i < v.rows(); ++i)
            v(i, 0) = coin(rng) == 0 ? 0 : small(rng);
        if (v.is_zero()) v(0, 0) = 1;
        span[static_cast<std::size_t>(k)] =
            hstack(span[static_cast<std::size_t>(k)], v);
        close_under_action();
        if (forced > 0) --forced;
    }

    // quotient bases: complements of the span, with projection matrices
    GradedModule m;
    m.ring = ring;
    m.truncation = truncation;
    m.dims.resize(static_cast<std::size_t>(truncation) + 1);

    // per degree: section (columns = lift of quotient basis) and projection
    std::vector<RatMatrix> lift, proj;
    for (int k = 0; k <= truncation; ++k) {
        RatMatrix s = span[static_cast<std::size_t>(k)];
        RatMatrix work = s.transposed();
        std::vector<std::size_t> pivots = rref_inplace(work);
        std::vector<bool> in_span(static_cast<std::size_t>(fmod.dim(k)),
                                  false);
        for (std::size_t p : pivots) in_span[p] = true;
        std::vector<std::size_t> free_rows;
        for (std::size_t i = 0; i < in_span.size(); ++i)
            if (!in_span[i]) free_rows.push_back(i);
        m.dims[static_cast<std::size_t>(k)] =
            static_cast<long>(free_rows.size());

        RatMatrix lf(static_cast<std::size_t>(fmod.dim(k)), free_rows.size());
        for (std::size_t j = 0; j < free_rows.size(); ++j)
            lf(free_rows[j], j) = 1;
        lift.push_back(std::move(lf));

        // projection: express each basis vector of F_k modulo span in the
        // free-row coordinates, via x = s a + lift b
        const RatMatrix combined = hstack(s, lift.back());
        const auto sol = solve(combined,
                               RatMatrix::identity(
                                   static_cast<std::size_t>(fmod.dim(k))));
        if (!sol)
            throw ConsistencyError("random module: projection failed");
        RatMatrix pr(free_rows.size(),
                     static_cast<std::size_t>(fmod.dim(k)));
        for (std::size_t i = 0; i < free_rows.size(); ++i)
            for (std::size_t j = 0; j < pr.cols(); ++j)
                pr(i, j) = (*sol)(s.cols() + i, j);
        proj.push_back(std::move(pr));
    }

    m.actions.resize(ring.generator_degrees.size());
    for (std::size_t i = 0; i < ring.generator_degrees.size(); ++i) {
        const int d = ring.generator_degrees[i];
        for (int k = 0; k + d <= truncation; ++k)
            m.actions[i].push_back(proj[static_cast<std::size_t>(k) + d] *
                                   fmod.action(i, k) *
                                   lift[static_cast<std::size_t>(k)]);
    }
    return m;
}

// Random cochain complex in degrees 0..top with d*d = 0: each next
// differential is a random combination of a basis of the left annihilator
// of the previous image.
inline FilteredComplex random_filtered_complex(std::mt19937& rng, int top,
                                               long max_dim,
                                               int filtration_length) {
    std::uniform_int_distribution<long> dimdist(0, max_dim);
    std::uniform_int_distribution<int> small(-2, 2);
    std::uniform_int_distribution<int> coin(0, 2);

    FilteredComplex fc;
    for (int n = 0; n <= top; ++n) fc.dims.push_back(dimdist(rng));
    if (fc.dims[0] == 0) fc.dims[0] = 1;

    RatMatrix prev(static_cast<std::size_t>(fc.dims[0]), 0); // image of d
    for (int n = 0; n < top; ++n) {
        const std::size_t rows = static_cast<std::size_t>(fc.dim(n + 1));
        const std::size_t cols = static_cast<std::size_t>(fc.dim(n));
        // rows of L span the left annihilator of im(prev)
        const RatMatrix l = kernel_basis(prev.transposed()).transposed();
        RatMatrix r(rows, l.rows());
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j)
                r(i, j) = coin(rng) == 0 ? 0 : small(rng);
        RatMatrix d = r * l;
        (void)cols;
        fc.d.push_back(d);
        prev = std::move(d);
    }

    // nested, d-closed filtration: level s is generated by random vectors
    // drawn from level s-1, together with their differentials
    fc.filtration_length = filtration_length;
    std::vector<RatMatrix> level; // spans the current level per degree
    for (int n = 0; n <= top; ++n)
        level.push_back(
            RatMatrix::identity(static_cast<std::size_t>(fc.dim(n))));
    for (int s = 1; s < filtration_length; ++s) {
        std::vector<std::vector<RatMatrix>> gens(
            static_cast<std::size_t>(top) + 1);
        for (int n = 0; n <= top; ++n) {
            const RatMatrix& prev_span = level[static_cast<std::size_t>(n)];
            const std::size_t avail = prev_span.cols();
            if (avail == 0) continue;
            std::uniform_int_distribution<std::size_t> count(0, avail / 2);
            const std::size_t k = count(rng);
            for (std::size_t c = 0; c < k; ++c) {
                RatMatrix coeff(avail, 1);
                for (std::size_t i = 0; i < avail; ++i)
                    coeff(i, 0) = coin(rng) == 0 ? 0 : small(rng);
                RatMatrix v = prev_span * coeff;
                gens[static_cast<std::size_t>(n)].push_back(v);
                if (n < top)
                    gens[static_cast<std::size_t>(n) + 1].push_back(
                        fc.diff(n) * v);
            }
        }
        std::vector<RatMatrix> next;
        for (int n = 0; n <= top; ++n) {
            RatMatrix span(static_cast<std::size_t>(fc.dim(n)), 0);
            for (const RatMatrix& v : gens[static_cast<std::size_t>(n)])
                span = hstack(span, v);
            next.push_back(span);
        }
        fc.filt.push_back(next);
        level = std::move(next);
    }
    return fc;
}

} // namespace emtor

#endif
