#ifndef EMTOR_TOR_HPP
#define EMTOR_TOR_HPP

// Three independent routes to the bigraded torsion product Tor^{q,H}_p:
// the Koszul complex (second argument = Q), the two-sided bar complex, and
// a minimal free resolution built step by step. The reassembly
// H^n = sum over q - p = n, with weight q on the Tor_{q-n} summand, follows
// the main degeneration theorem for pure inputs.
//
// Convention note: the source derivation gives the vanishing range as
// H^q = 0 for q < 2p, but then states the final inequality with reversed
// orientation ("0 >= q >= 2p"). We enforce q >= 2p >= 0, the bound that is
// consistent with the derivation, on every computed table.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"
#include "emtor/linalg.hpp"

namespace emtor {

struct BigradedTor {
    std::map<std::pair<int, int>, long> dims; // (p, q) -> dim, nonzero only
    int trusted_q = 0; // entries with q <= trusted_q are exact

    long dim(int p, int q) const {
        auto it = dims.find({p, q});
        return it == dims.end() ? 0 : it->second;
    }

    void set(int p, int q, long d) {
        if (d == 0) return;
        if (p < 0 || q < 2 * p)
            throw ConsistencyError(
                "Tor vanishing bound violated: nonzero entry at p=" +
                std::to_string(p) + ", q=" + std::to_string(q));
        dims[{p, q}] = d;
    }

    friend bool operator==(const BigradedTor& a, const BigradedTor& b) {
        return a.dims == b.dims; // trusted ranges may differ
    }
};

// Restrict to entries with q <= bound; used to compare methods on the
// intersection of their trusted ranges.
inline BigradedTor restrict_q(const BigradedTor& t, int bound) {
    BigradedTor r;
    r.trusted_q = bound;
    for (const auto& [key, d] : t.dims)
        if (key.second <= bound) r.dims[key] = d;
    return r;
}

// ---- Koszul route ----------------------------------------------------------

// Chain complex M tensor Lambda(e_1..e_r) in one internal degree q:
// the p-th group is the sum of M_{q - deg(e_S)} over p-subsets S, with
// d(x ^ e_S) = sum_j (-1)^{j-1} f_{i_j} x ^ e_{S minus i_j}.
namespace detail {

inline std::vector<std::vector<int>> subsets_of_size(int r, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < r; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

struct KoszulSlice {
    // for fixed q: groups[p] lists (subset, offset, block dim)
    struct Block {
        std::vector<int> subset;
        std::size_t offset;
        long mdim;
        int mdeg;
    };
    std::vector<std::vector<Block>> groups; // index p = 0..r
    std::vector<std::size_t> sizes;
    std::vector<RatMatrix> diff; // diff[p] : C_p -> C_{p-1}, p >= 1
};

inline KoszulSlice koszul_slice(const GradedModule& m, int q) {
    const int r = static_cast<int>(m.ring.generator_degrees.size());
    KoszulSlice s;
    s.groups.resize(static_cast<std::size_t>(r) + 1);
    s.sizes.assign(static_cast<std::size_t>(r) + 1, 0);
    for (int p = 0; p <= r; ++p) {
        std::size_t off = 0;
        for (auto& sub : subsets_of_size(r, p)) {
            int wedge_deg = 0;
            for (int i : sub) wedge_deg += m.ring.generator_degrees[i];
            const int mdeg = q - wedge_deg;
            const long md = m.dim(mdeg);
            if (md > 0)
                s.groups[static_cast<std::size_t>(p)].push_back(
                    {sub, off, md, mdeg});
            off += static_cast<std::size_t>(md > 0 ? md : 0);
        }
        s.sizes[static_cast<std::size_t>(p)] = off;
    }
    s.diff.resize(static_cast<std::size_t>(r) + 1);
    for (int p = 1; p <= r; ++p) {
        RatMatrix d(s.sizes[static_cast<std::size_t>(p) - 1],
                    s.sizes[static_cast<std::size_t>(p)]);
        // locate target blocks by subset
        std::map<std::vector<int>, const KoszulSlice::Block*> tgt;
        for (const auto& b : s.groups[static_cast<std::size_t>(p) - 1])
            tgt[b.subset] = &b;
        for (const auto& b : s.groups[static_cast<std::size_t>(p)]) {
            for (std::size_t j = 0; j < b.subset.size(); ++j) {
                const int gen = b.subset[static_cast<std::size_t>(j)];
                std::vector<int> rest = b.subset;
                rest.erase(rest.begin() + static_cast<long>(j));
                auto it = tgt.find(rest);
                if (it == tgt.end()) continue;
                const RatMatrix& a = m.action(static_cast<std::size_t>(gen),
                                              b.mdeg);
                const int sign = (j % 2 == 0) ? 1 : -1;
                for (std::size_t row = 0; row < a.rows(); ++row)
                    for (std::size_t col = 0; col < a.cols(); ++col)
                        if (a(row, col) != 0)
                            d(it->second->offset + row, b.offset + col) =
                                sign * a(row, col);
            }
        }
        s.diff[static_cast<std::size_t>(p)] = std::move(d);
    }
    return s;
}

} // namespace detail

// Tor^{q,H}_p(M, Q) as homology of the Koszul complex, for q <= bound.
inline BigradedTor koszul_tor(const GradedModule& m, int bound) {
    if (bound > m.truncation)
        throw TruncationExceeded("koszul_tor: bound exceeds module truncation");
    const auto rep = validate_module(m);
    if (!rep.ok) throw ValidationError("koszul_tor: " + rep.message);
    const int r = static_cast<int>(m.ring.generator_degrees.size());
    BigradedTor t;
    t.trusted_q = bound - m.ring.max_generator_degree();
    for (int q = 0; q <= bound; ++q) {
        const auto s = detail::koszul_slice(m, q);
        for (int p = 0; p <= r; ++p) {
            const RatMatrix& d_in = p < r
                ? s.diff[static_cast<std::size_t>(p) + 1]
                : RatMatrix(s.sizes[static_cast<std::size_t>(p)], 0);
            const RatMatrix& d_out = p > 0
                ? s.diff[static_cast<std::size_t>(p)]
                : RatMatrix(0, s.sizes[static_cast<std::size_t>(p)]);
            try {
                t.set(p, q, static_cast<long>(homology_dim(d_in, d_out)));
            } catch (const CompositionNotZero&) {
                throw CompositionNotZero(
                    "koszul_tor: d*d != 0 at p=" + std::to_string(p) +
                    ", q=" + std::to_string(q));
            }
        }
    }
    return t;
}

// ---- bar route -------------------------------------------------------------

// Two-sided bar complex Bar_p(M, A, N) = M (x) Abar^{(x) p} (x) N with the
// alternating-sum differential. All inputs are evenly generated on the ring
// side, so no Koszul signs enter.
struct BarComplex {
    int bound = 0;
    int p_max = 0;
    std::map<std::pair<int, int>, std::size_t> sizes;  // (p, q) -> dim
    std::map<std::pair<int, int>, RatMatrix> diff;     // d : (p,q) -> (p-1,q)

    std::size_t size(int p, int q) const {
        auto it = sizes.find({p, q});
        return it == sizes.end() ? 0 : it->second;
    }
    const RatMatrix& differential(int p, int q) const {
        static const RatMatrix empty;
        auto it = diff.find({p, q});
        return it == diff.end() ? empty : it->second;
    }
};

namespace detail {

// bar basis element: (module degree u, index in M_u), p reduced algebra
// factors given as (degree, index), (module degree v, index in N_v)
struct BarElem {
    int u;
    std::size_t mi;
    std::vector<std::pair<int, std::size_t>> word;
    int v;
    std::size_t ni;

    friend auto operator<=>(const BarElem&, const BarElem&) = default;
};

inline void enumerate_bar(const GradedModule& ml, const GradedAlgebra& a,
                          const GradedModule& mr, int p, int q,
                          std::vector<BarElem>& out) {
    // choose word degrees first (each >= 2), then module degrees
    std::vector<std::pair<int, std::size_t>> word;
    const auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == p) {
            for (int u = 0; u <= remaining; ++u) {
                const long dl = ml.dim(u);
                if (dl == 0) continue;
                const int v = remaining - u;
                const long dr = mr.dim(v);
                if (dr == 0) continue;
                for (long i = 0; i < dl; ++i)
                    for (long j = 0; j < dr; ++j)
                        out.push_back({u, static_cast<std::size_t>(i), word, v,
                                       static_cast<std::size_t>(j)});
            }
            return;
        }
        for (int d = 2; d + 2 * (p - pos - 1) <= remaining; ++d) {
            const long ad = a.dim(d);
            if (ad == 0) continue;
            for (long i = 0; i < ad; ++i) {
                word.emplace_back(d, static_cast<std::size_t>(i));
                self(self, pos + 1, remaining - d);
                word.pop_back();
            }
        }
    };
    rec(rec, 0, q);
}

} // namespace detail

inline BarComplex build_bar_complex(const GradedModule& m_left,
                                    const GradedAlgebra& a,
                                    const GradedModule& m_right, int bound) {
    if (a.ring != m_left.ring || a.ring != m_right.ring)
        throw ValidationError("bar complex: ring mismatch between inputs");
    for (int d : a.ring.generator_degrees)
        if (d < 2)
            throw NonSimplyConnectedBase(
                "bar complex: base has classes below degree 2");
    if (bound > m_left.truncation || bound > m_right.truncation ||
        bound > a.truncation)
        throw TruncationExceeded("bar complex: bound exceeds a truncation");

    BarComplex bc;
    bc.bound = bound;
    bc.p_max = bound / 2;

    // bases and lookups per (p, q)
    std::map<std::pair<int, int>, std::vector<detail::BarElem>> bases;
    std::map<std::pair<int, int>, std::map<detail::BarElem, std::size_t>> lk;
    for (int q = 0; q <= bound; ++q)
        for (int p = 0; 2 * p <= q; ++p) {
            auto& b = bases[{p, q}];
            detail::enumerate_bar(m_left, a, m_right, p, q, b);
            auto& m = lk[{p, q}];
            for (std::size_t i = 0; i < b.size(); ++i) m[b[i]] = i;
            bc.sizes[{p, q}] = b.size();
        }

    for (int q = 0; q <= bound; ++q)
        for (int p = 1; 2 * p <= q; ++p) {
            const auto& src = bases[{p, q}];
            const auto& tgt_lk = lk[{p - 1, q}];
            RatMatrix d(bc.sizes[{p - 1, q}], src.size());
            for (std::size_t col = 0; col < src.size(); ++col) {
                const detail::BarElem& e = src[col];
                // face 0: first factor acts on the left module
                {
                    const auto& [ad, ai] = e.word.front();
                    const RatMatrix act = act_monomial(
                        m_left, a.basis[static_cast<std::size_t>(ad)][ai],
                        e.u);
                    detail::BarElem f = e;
                    f.u += ad;
                    f.word.erase(f.word.begin());
                    for (std::size_t row = 0; row < act.rows(); ++row) {
                        if (act(row, e.mi) == 0) continue;
                        f.mi = row;
                        d(tgt_lk.at(f), col) += act(row, e.mi);
                    }
                }
                // faces 1..p-1: merge adjacent algebra factors
                for (int i = 1; i < p; ++i) {
                    const auto& [d1, i1] = e.word[static_cast<std::size_t>(i) - 1];
                    const auto& [d2, i2] = e.word[static_cast<std::size_t>(i)];
                    std::vector<int> prod =
                        a.basis[static_cast<std::size_t>(d1)][i1];
                    const auto& other =
                        a.basis[static_cast<std::size_t>(d2)][i2];
                    for (std::size_t g = 0; g < prod.size(); ++g)
                        prod[g] += other[g];
                    detail::BarElem f = e;
                    f.word.erase(f.word.begin() + i);
                    f.word[static_cast<std::size_t>(i) - 1] = {
                        d1 + d2, a.index(d1 + d2, prod)};
                    d(tgt_lk.at(f), col) += (i % 2 == 0) ? 1 : -1;
                }
                // face p: last factor acts on the right module
                {
                    const auto& [ad, ai] = e.word.back();
                    const RatMatrix act = act_monomial(
                        m_right, a.basis[static_cast<std::size_t>(ad)][ai],
                        e.v);
                    detail::BarElem f = e;
                    f.v += ad;
                    f.word.pop_back();
                    const int sign = (p % 2 == 0) ? 1 : -1;
                    for (std::size_t row = 0; row < act.rows(); ++row) {
                        if (act(row, e.ni) == 0) continue;
                        f.ni = row;
                        d(tgt_lk.at(f), col) += sign * act(row, e.ni);
                    }
                }
            }
            bc.diff[{p, q}] = std::move(d);
        }
    return bc;
}

// Tor^{q,H}_p(M, N) as homology of the bar complex, for q <= bound.
inline BigradedTor bar_tor(const GradedModule& m_left, const GradedAlgebra& a,
                           const GradedModule& m_right, int bound) {
    {
        const auto rl = validate_module(m_left);
        if (!rl.ok) throw ValidationError("bar_tor (left): " + rl.message);
        const auto rr = validate_module(m_right);
        if (!rr.ok) throw ValidationError("bar_tor (right): " + rr.message);
    }
    const BarComplex bc = build_bar_complex(m_left, a, m_right, bound);
    BigradedTor t;
    // Each internal-degree slice is complete below the bound; one reduced
    // bar factor of slack keeps the report conservative.
    t.trusted_q = bound - 2;
    for (int q = 0; q <= bound; ++q)
        for (int p = 0; 2 * p <= q; ++p) {
            const std::size_t n = bc.size(p, q);
            RatMatrix d_in = bc.size(p + 1, q) > 0
                                 ? bc.differential(p + 1, q)
                                 : RatMatrix(n, 0);
            RatMatrix d_out = (p > 0 && n > 0) ? bc.differential(p, q)
                                               : RatMatrix(0, n);
            if (d_out.rows() == 0 && p > 0) d_out = RatMatrix(bc.size(p - 1, q), n);
            try {
                t.set(p, q, static_cast<long>(homology_dim(d_in, d_out)));
            } catch (const CompositionNotZero&) {
                throw CompositionNotZero(
                    "bar_tor: d*d != 0 at p=" + std::to_string(p) +
                    ", q=" + std::to_string(q));
            }
        }
    return t;
}

// ---- resolution route ------------------------------------------------------

// Stepwise free resolution: Q_p is free on a minimal generating set of
// M_p, and M_{p+1} is the kernel of Q_p -> M_p. Minimal covers are the
// reading under which a free module resolves in one step; they keep the
// connectivity estimate H^q(M_p) = 0 for q < 2p, which is asserted.
struct SmithResolution {
    PolynomialRingData ring;
    int degree_bound = 0; // degrees materialized, <= module truncation
    int steps = 0;

    std::vector<std::vector<int>> generator_degrees; // per step p
    std::vector<FreeModuleBasis> free_bases;         // per step p
    // images[p]: per generator of Q_{p+1} (degree k), its image in Q_p as a
    // coordinate vector over the free basis of Q_p in degree k
    std::vector<std::vector<std::vector<Rat>>> images;
    std::vector<std::vector<long>> kernel_dims; // dims of M_{p+1} per degree
};

inline SmithResolution smith_resolution(const GradedModule& m, int steps,
                                        int degree_bound = -1) {
    if (degree_bound < 0) degree_bound = m.truncation;
    if (degree_bound > m.truncation)
        throw TruncationExceeded("smith_resolution: bound exceeds truncation");
    if (2 * steps > m.truncation)
        throw TruncationExceeded(
            "smith_resolution: steps exceed the truncation slack");
    const auto rep = validate_module(m);
    if (!rep.ok) throw ValidationError("smith_resolution: " + rep.message);

    SmithResolution res;
    res.ring = m.ring;
    res.degree_bound = degree_bound;
    res.steps = steps;

    GradedModule cur = truncate(m, degree_bound);
    const std::size_t r = m.ring.generator_degrees.size();

    for (int p = 0; p < steps; ++p) {
        // connectivity estimate
        for (int k = 0; k < std::min(2 * p, degree_bound + 1); ++k)
            if (cur.dim(k) != 0)
                throw ConsistencyError(
                    "smith_resolution: kernel module nonzero below degree 2p");

        // minimal generators of cur in degree k: complement of the span of
        // generator-action images
        std::vector<std::vector<std::size_t>> gen_cols(
            static_cast<std::size_t>(degree_bound) + 1);
        std::vector<RatMatrix> complement(
            static_cast<std::size_t>(degree_bound) + 1);
        std::vector<int> qgen_degrees;
        for (int k = 0; k <= degree_bound; ++k) {
            const long dk = cur.dim(k);
            if (dk == 0) continue;
            RatMatrix span(static_cast<std::size_t>(dk), 0);
            for (std::size_t i = 0; i < r; ++i) {
                const int d = m.ring.generator_degrees[i];
                if (k - d >= 0 && cur.dim(k - d) > 0)
                    span = hstack(span, cur.action(i, k - d));
            }
            // cover rows = standard coordinates outside the pivot rows of
            // the decomposable span
            std::vector<bool> in_span_row(static_cast<std::size_t>(dk), false);
            RatMatrix wt = span.transposed();
            for (std::size_t piv : rref_inplace(wt)) in_span_row[piv] = true;
            for (std::size_t row = 0; row < static_cast<std::size_t>(dk);
                 ++row)
                if (!in_span_row[row]) {
                    gen_cols[static_cast<std::size_t>(k)].push_back(row);
                    qgen_degrees.push_back(k);
                }
        }
        res.generator_degrees.push_back(qgen_degrees);
        FreeModuleBasis fb = make_free_basis(m.ring, qgen_degrees,
                                             degree_bound);
        res.free_bases.push_back(fb);

        // surjection pi: Q_p -> M_p, degreewise
        std::vector<RatMatrix> pi(static_cast<std::size_t>(degree_bound) + 1);
        for (int k = 0; k <= degree_bound; ++k) {
            RatMatrix p_k(static_cast<std::size_t>(cur.dim(k)),
                          static_cast<std::size_t>(fb.dim(k)));
            const auto& level = fb.basis[static_cast<std::size_t>(k)];
            for (std::size_t col = 0; col < level.size(); ++col) {
                const auto& [exp, g] = level[col];
                const int gdeg = qgen_degrees[static_cast<std::size_t>(g)];
                // target standard basis vector inside M_p at degree gdeg
                std::size_t row_in_m = 0;
                {
                    // g-th generator corresponds to a chosen complement row
                    int seen = 0;
                    for (int kk = 0; kk <= degree_bound && seen <= g; ++kk)
                        for (std::size_t rr :
                             gen_cols[static_cast<std::size_t>(kk)]) {
                            if (seen == g) row_in_m = rr;
                            ++seen;
                            if (seen > g) break;
                        }
                }
                const RatMatrix act = act_monomial(cur, exp, gdeg);
                for (std::size_t row = 0; row < act.rows(); ++row)
                    if (act(row, row_in_m) != 0)
                        p_k(row, col) = act(row, row_in_m);
            }
            // graded Nakayama says this is onto; verify
            if (rank(p_k) != static_cast<std::size_t>(cur.dim(k)))
                throw ConsistencyError(
                    "smith_resolution: minimal cover failed to surject");
            pi[static_cast<std::size_t>(k)] = std::move(p_k);
        }

        // M_{p+1} = kernel of pi, with actions induced from the free module
        const GradedModule qmod = fb.to_module();
        std::vector<RatMatrix> ker(static_cast<std::size_t>(degree_bound) + 1);
        GradedModule next;
        next.ring = m.ring;
        next.truncation = degree_bound;
        next.dims.assign(static_cast<std::size_t>(degree_bound) + 1, 0);
        for (int k = 0; k <= degree_bound; ++k) {
            ker[static_cast<std::size_t>(k)] =
                kernel_basis(pi[static_cast<std::size_t>(k)]);
            next.dims[static_cast<std::size_t>(k)] = static_cast<long>(
                ker[static_cast<std::size_t>(k)].cols());
        }
        next.actions.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            const int d = m.ring.generator_degrees[i];
            for (int k = 0; k + d <= degree_bound; ++k) {
                const RatMatrix img =
                    qmod.action(i, k) * ker[static_cast<std::size_t>(k)];
                const auto x = solve(ker[static_cast<std::size_t>(k + d)], img);
                if (!x)
                    throw ConsistencyError(
                        "smith_resolution: kernel not action-closed");
                next.actions[i].push_back(*x);
            }
        }

        // kernel basis columns, grouped by degree: the inclusion M_{p+1} -> Q_p
        std::vector<long> kdims;
        for (int k = 0; k <= degree_bound; ++k)
            kdims.push_back(next.dim(k));
        res.kernel_dims.push_back(kdims);
        res.images.push_back({});
        auto& slot = res.images.back();
        for (int k = 0; k <= degree_bound; ++k) {
            const RatMatrix& kk = ker[static_cast<std::size_t>(k)];
            for (std::size_t c = 0; c < kk.cols(); ++c) {
                std::vector<Rat> col(kk.rows());
                for (std::size_t rr = 0; rr < kk.rows(); ++rr)
                    col[rr] = kk(rr, c);
                slot.push_back(std::move(col));
            }
        }
        cur = std::move(next);
    }
    return res;
}

// Tor^{q,H}_p(M, N) from a stepwise resolution of M, tensored with N.
// Reported for p <= steps - 2 and q <= min(bound, degree_bound).
inline BigradedTor tor_from_resolution(const SmithResolution& res,
                                       const GradedModule& n, int bound) {
    if (n.ring != res.ring)
        throw ValidationError("tor_from_resolution: ring mismatch");
    if (bound > res.degree_bound || bound > n.truncation)
        throw TruncationExceeded("tor_from_resolution: bound too large");
    const int steps = res.steps;
    BigradedTor t;
    t.trusted_q = bound;

    // Per p >= 1, recover the image of each generator of Q_p inside Q_{p-1}.
    // Generators of Q_p are the minimal-cover rows of M_p = ker(pi_{p-1});
    // the cover computation below repeats the one in smith_resolution on the
    // stored kernel columns, so the generator order matches exactly.
    struct StepMaps {
        // per generator of Q_p: (degree, coordinate vector over free basis of
        // Q_{p-1} at that degree); empty for p = 0
        std::vector<std::pair<int, std::vector<Rat>>> gen_images;
    };
    std::vector<StepMaps> maps(static_cast<std::size_t>(steps));
    for (int p = 1; p < steps; ++p) {
        // kernel columns of pi_{p-1}, grouped by degree
        std::vector<std::vector<std::vector<Rat>>> ker_by_deg(
            static_cast<std::size_t>(res.degree_bound) + 1);
        std::size_t idx = 0;
        for (int k = 0; k <= res.degree_bound; ++k) {
            const long cnt = res.kernel_dims[static_cast<std::size_t>(p) - 1]
                                            [static_cast<std::size_t>(k)];
            for (long c = 0; c < cnt; ++c)
                ker_by_deg[static_cast<std::size_t>(k)].push_back(
                    res.images[static_cast<std::size_t>(p) - 1][idx++]);
        }
        // induced actions on M_p in kernel coordinates, then its cover rows
        const FreeModuleBasis& fb =
            res.free_bases[static_cast<std::size_t>(p) - 1];
        const GradedModule fmod = fb.to_module();
        for (int k = 0; k <= res.degree_bound; ++k) {
            const auto& cols = ker_by_deg[static_cast<std::size_t>(k)];
            const long dk = static_cast<long>(cols.size());
            if (dk == 0) continue;
            RatMatrix kmat(cols.empty() ? 0 : cols[0].size(),
                           static_cast<std::size_t>(dk));
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t rr = 0; rr < cols[c].size(); ++rr)
                    kmat(rr, c) = cols[c][rr];
            RatMatrix span(static_cast<std::size_t>(dk), 0);
            for (std::size_t i = 0; i < res.ring.generator_degrees.size();
                 ++i) {
                const int d = res.ring.generator_degrees[i];
                if (k - d < 0) continue;
                const auto& below =
                    ker_by_deg[static_cast<std::size_t>(k - d)];
                if (below.empty()) continue;
                RatMatrix bmat(below[0].size(), below.size());
                for (std::size_t c = 0; c < below.size(); ++c)
                    for (std::size_t rr = 0; rr < below[c].size(); ++rr)
                        bmat(rr, c) = below[c][rr];
                const RatMatrix img = fmod.action(i, k - d) * bmat;
                const auto x = solve(kmat, img);
                if (!x)
                    throw ConsistencyError(
                        "tor_from_resolution: kernel not closed");
                span = hstack(span, *x);
            }
            RatMatrix wt = span.transposed();
            const auto row_pivots = rref_inplace(wt);
            std::vector<bool> in_span(static_cast<std::size_t>(dk), false);
            for (std::size_t piv : row_pivots) in_span[piv] = true;
            for (std::size_t row = 0; row < static_cast<std::size_t>(dk);
                 ++row)
                if (!in_span[row])
                    maps[static_cast<std::size_t>(p)].gen_images.emplace_back(
                        k, cols[row]);
        }
        // sanity: generator degrees must match what the construction found
        std::vector<int> degs;
        for (const auto& [deg, vec] : maps[static_cast<std::size_t>(p)]
                                          .gen_images)
            degs.push_back(deg);
        if (degs != res.generator_degrees[static_cast<std::size_t>(p)])
            throw ConsistencyError(
                "tor_from_resolution: resolution generators out of sync");
    }

    // chain groups and differentials per internal degree q
    for (int q = 0; q <= bound; ++q) {
        // group sizes per p
        std::vector<std::vector<std::size_t>> offsets(
            static_cast<std::size_t>(steps));
        std::vector<std::size_t> sizes(static_cast<std::size_t>(steps), 0);
        for (int p = 0; p < steps; ++p) {
            const auto& gd =
                res.generator_degrees[static_cast<std::size_t>(p)];
            std::size_t off = 0;
            for (int g : gd) {
                offsets[static_cast<std::size_t>(p)].push_back(off);
                const long nd = n.dim(q - g);
                off += static_cast<std::size_t>(nd > 0 ? nd : 0);
            }
            sizes[static_cast<std::size_t>(p)] = off;
        }
        // differential (p) -> (p-1)
        std::vector<RatMatrix> dmat(static_cast<std::size_t>(steps));
        for (int p = 1; p < steps; ++p) {
            const FreeModuleBasis& tgt_fb =
                res.free_bases[static_cast<std::size_t>(p) - 1];
            const auto& tgt_gd =
                res.generator_degrees[static_cast<std::size_t>(p) - 1];
            RatMatrix d(sizes[static_cast<std::size_t>(p) - 1],
                        sizes[static_cast<std::size_t>(p)]);
            const auto& gens = maps[static_cast<std::size_t>(p)].gen_images;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const auto& [gdeg, coords] = gens[g];
                const long nd = n.dim(q - gdeg);
                if (nd <= 0) continue;
                const std::size_t col0 =
                    offsets[static_cast<std::size_t>(p)][g];
                // coords over the free basis of Q_{p-1} at degree gdeg:
                // entry at (monomial u, target generator h) contributes
                // coords * act_monomial(N, u) into the h block.
                const auto& level =
                    tgt_fb.basis[static_cast<std::size_t>(gdeg)];
                for (std::size_t b = 0; b < level.size(); ++b) {
                    if (coords[b] == 0) continue;
                    const auto& [exp, h] = level[b];
                    const int hdeg = tgt_gd[static_cast<std::size_t>(h)];
                    if (n.dim(q - hdeg) <= 0) continue;
                    const RatMatrix act = act_monomial(n, exp, q - gdeg);
                    const std::size_t row0 =
                        offsets[static_cast<std::size_t>(p) - 1]
                               [static_cast<std::size_t>(h)];
                    for (std::size_t rr = 0; rr < act.rows(); ++rr)
                        for (std::size_t cc = 0; cc < act.cols(); ++cc)
                            if (act(rr, cc) != 0)
                                d(row0 + rr, col0 + cc) +=
                                    coords[b] * act(rr, cc);
                }
            }
            dmat[static_cast<std::size_t>(p)] = std::move(d);
        }
        for (int p = 0; p + 2 <= steps; ++p) {
            const RatMatrix d_in = dmat[static_cast<std::size_t>(p) + 1];
            const RatMatrix d_out =
                p > 0 ? dmat[static_cast<std::size_t>(p)]
                      : RatMatrix(0, sizes[0]);
            try {
                t.set(p, q, static_cast<long>(homology_dim(d_in, d_out)));
            } catch (const CompositionNotZero&) {
                throw CompositionNotZero(
                    "tor_from_resolution: d*d != 0 at p=" +
                    std::to_string(p) + ", q=" + std::to_string(q));
            }
        }
    }
    return t;
}

// ---- reassembly and purity -------------------------------------------------

// H^n = sum over q - p = n of Tor entries; gr^W_q H^n = Tor^{q}_{q-n}.
inline WeightedGradedVectorSpace assemble_cohomology(const BigradedTor& t) {
    WeightedGradedVectorSpace w;
    for (const auto& [key, d] : t.dims) {
        const auto& [p, q] = key;
        w.set(q - p, q, d);
    }
    return w;
}

struct PurityReport {
    bool pure = true;
    int degree = 0, weight = 0; // first violation when impure
};

inline PurityReport purity_check(const WeightedGradedVectorSpace& w) {
    for (const auto& [key, d] : w.dims)
        if (d != 0 && key.first != key.second)
            return {false, key.first, key.second};
    return {};
}

} // namespace emtor

#endif
