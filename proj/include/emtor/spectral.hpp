#ifndef EMTOR_SPECTRAL_HPP
#define EMTOR_SPECTRAL_HPP

// Finite filtered cochain complexes over Q and their spectral sequences,
// computed by explicit subquotient bases
//   Z_r(s,n) = F^s C^n  intersect  d^{-1}(F^{s+r} C^{n+1})
//   E_r(s,n) = Z_r(s,n) / (Z_{r-1}(s+1,n) + d Z_{r-1}(s-r+1,n-1)).
// Storage uses a nonnegative filtration index s; the Eilenberg-Moore
// front end translates to the second-quadrant (-p, q) convention.
//
// The couple's arrow bidegrees fix conventions only up to mirror symmetry,
// so the engine verifies itself against total-complex homology instead of
// matching any particular arrow bookkeeping: the sum of stable entries per
// total degree must equal dim H^n, and every page must be the homology of
// the one before.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"
#include "emtor/linalg.hpp"
#include "emtor/tor.hpp"

namespace emtor {

struct FilteredComplex {
    // total complex in degrees 0..N
    std::vector<long> dims;      // dims[n]
    std::vector<RatMatrix> d;    // d[n] : C^n -> C^{n+1}, size N (last maps to 0)

    // decreasing filtration F^0 = C >= F^1 >= ... >= F^L = 0; the spanning
    // matrices are given for the intermediate levels s = 1..L-1
    int filtration_length = 1;
    std::vector<std::vector<RatMatrix>> filt; // filt[s-1][n] spans F^s C^n

    // optional weight tag per basis vector and degree; when present, the
    // differential must be block-zero between distinct weights
    std::optional<std::vector<std::vector<int>>> weights;

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }

    long dim(int n) const {
        if (n < 0 || n > top_degree()) return 0;
        return dims[static_cast<std::size_t>(n)];
    }

    // differential out of degree n (zero map past the end)
    RatMatrix diff(int n) const {
        if (n < 0 || n >= static_cast<int>(d.size()))
            return RatMatrix(static_cast<std::size_t>(dim(n + 1)),
                             static_cast<std::size_t>(dim(n)));
        return d[static_cast<std::size_t>(n)];
    }

    // spanning matrix of F^s C^n
    RatMatrix level(int s, int n) const {
        const std::size_t nn = static_cast<std::size_t>(dim(n));
        if (s <= 0) return RatMatrix::identity(nn);
        if (s >= filtration_length || n < 0 || n > top_degree())
            return RatMatrix(nn, 0);
        return filt[static_cast<std::size_t>(s) - 1]
                   [static_cast<std::size_t>(n)];
    }
};

inline void validate_filtered_complex(const FilteredComplex& fc) {
    const int top = fc.top_degree();
    if (static_cast<int>(fc.d.size()) < top)
        throw InvalidFiltration("missing differentials");
    for (int n = 0; n < top; ++n) {
        const RatMatrix& dn = fc.d[static_cast<std::size_t>(n)];
        if (dn.rows() != static_cast<std::size_t>(fc.dim(n + 1)) ||
            dn.cols() != static_cast<std::size_t>(fc.dim(n)))
            throw InvalidFiltration("differential shape mismatch at degree " +
                                    std::to_string(n));
        if (n + 1 < top) {
            const RatMatrix& dn1 = fc.d[static_cast<std::size_t>(n) + 1];
            if (dn.rows() > 0 && dn.cols() > 0 && !(dn1 * dn).is_zero())
                throw CompositionNotZero("d*d != 0 at degree " +
                                         std::to_string(n));
        }
    }
    if (static_cast<int>(fc.filt.size()) != fc.filtration_length - 1)
        throw InvalidFiltration("filtration levels inconsistent with length");
    for (int s = 1; s < fc.filtration_length; ++s)
        for (int n = 0; n <= top; ++n) {
            const RatMatrix fs = fc.level(s, n);
            if (fs.rows() != static_cast<std::size_t>(fc.dim(n)))
                throw InvalidFiltration("filtration shape mismatch");
            // nested in the previous level
            const RatMatrix prev = fc.level(s - 1, n);
            if (rank(hstack(prev, fs)) != rank(prev))
                throw InvalidFiltration("filtration not nested at level " +
                                        std::to_string(s));
            // closed under the differential
            const RatMatrix img = fc.diff(n) * fs;
            const RatMatrix fs_next = fc.level(s, n + 1);
            if (rank(hstack(fs_next, img)) != rank(fs_next))
                throw InvalidFiltration(
                    "filtration level " + std::to_string(s) +
                    " not closed under d at degree " + std::to_string(n));
        }
    if (fc.weights) {
        for (int n = 0; n < top; ++n) {
            const auto& wsrc = (*fc.weights)[static_cast<std::size_t>(n)];
            const auto& wtgt = (*fc.weights)[static_cast<std::size_t>(n) + 1];
            const RatMatrix dn = fc.diff(n);
            for (std::size_t i = 0; i < dn.rows(); ++i)
                for (std::size_t j = 0; j < dn.cols(); ++j)
                    if (dn(i, j) != 0 && wtgt[i] != wsrc[j])
                        throw ConsistencyError(
                            "differential does not preserve weights");
        }
    }
}

struct Page {
    int r = 0;
    std::map<std::pair<int, int>, long> dims; // (filtration s, total n) -> dim
    // nonzero d_r differentials: source (s, n) -> rank
    std::map<std::pair<int, int>, long> differential_ranks;

    long dim(int s, int n) const {
        auto it = dims.find({s, n});
        return it == dims.end() ? 0 : it->second;
    }
    long nonzero_differentials() const {
        return static_cast<long>(differential_ranks.size());
    }
};

struct SpectralSequence {
    std::vector<Page> pages;      // pages r = 1 .. stabilization
    Page infinity;                // copy of the last page
    std::vector<long> total_homology; // dim H^n of the total complex
};

// All pages of the filtered-complex spectral sequence, up to forced
// stabilization at r = filtration length. Verifies page coherence and
// convergence (sum of E_infty dims per total degree = dim H^n) exactly.
inline SpectralSequence pages(const FilteredComplex& fc) {
    validate_filtered_complex(fc);
    const int top = fc.top_degree();
    const int L = fc.filtration_length;

    // Z_r(s,n) spanning matrices, memoized
    std::map<std::tuple<int, int, int>, RatMatrix> zcache;
    const auto zspace = [&](int r, int s, int n) -> const RatMatrix& {
        if (s >= L) {
            // zero space
            auto [it, fresh] = zcache.try_emplace(
                {r, s, n}, RatMatrix(static_cast<std::size_t>(fc.dim(n)), 0));
            return it->second;
        }
        auto found = zcache.find({r, s, n});
        if (found != zcache.end()) return found->second;
        const RatMatrix fs = fc.level(s, n);
        const RatMatrix target = fc.level(s + r, n + 1);
        const RatMatrix pre = preimage(fc.diff(n), target);
        RatMatrix z = s <= 0 ? pre : intersect_spaces(fs, pre);
        auto [it, fresh] = zcache.emplace(std::make_tuple(r, s, n),
                                          std::move(z));
        return it->second;
    };

    const auto page_entry_dims = [&](int r, int s, int n) -> long {
        const RatMatrix& z = zspace(r, s, n);
        RatMatrix den = zspace(r - 1, s + 1, n);
        const RatMatrix& below = zspace(r - 1, s - r + 1, n - 1);
        den = hstack(den, fc.diff(n - 1) * below);
        return static_cast<long>(rank(z)) - static_cast<long>(rank(den));
    };

    const auto dr_rank = [&](int r, int s, int n) -> long {
        const RatMatrix& z = zspace(r, s, n);
        const RatMatrix img = fc.diff(n) * z;
        RatMatrix den = zspace(r - 1, s + r + 1, n + 1);
        den = hstack(den, fc.diff(n) * zspace(r - 1, s + 1, n));
        return static_cast<long>(rank(hstack(den, img))) -
               static_cast<long>(rank(den));
    };

    SpectralSequence ss;
    for (int n = 0; n <= top; ++n) {
        const RatMatrix ker = kernel_basis(fc.diff(n));
        const std::size_t im = n > 0 ? rank(fc.diff(n - 1)) : 0;
        ss.total_homology.push_back(static_cast<long>(rank(ker)) -
                                    static_cast<long>(im));
    }

    const int r_stop = std::max(1, L); // d_r = 0 for r >= L
    for (int r = 1; r <= r_stop; ++r) {
        Page page;
        page.r = r;
        for (int s = 0; s < L; ++s)
            for (int n = 0; n <= top; ++n) {
                const long dd = page_entry_dims(r, s, n);
                if (dd != 0) page.dims[{s, n}] = dd;
            }
        for (int s = 0; s < L; ++s)
            for (int n = 0; n <= top; ++n) {
                if (page.dim(s, n) == 0) continue;
                const long rk = dr_rank(r, s, n);
                if (rk != 0) page.differential_ranks[{s, n}] = rk;
            }
        // page coherence: next page dims = homology of this page
        if (!ss.pages.empty()) {
            const Page& prev = ss.pages.back();
            for (int s = 0; s < L; ++s)
                for (int n = 0; n <= top; ++n) {
                    auto rin = prev.differential_ranks.find({s - prev.r,
                                                             n - 1});
                    auto rout = prev.differential_ranks.find({s, n});
                    const long expect =
                        prev.dim(s, n) -
                        (rin == prev.differential_ranks.end() ? 0
                                                              : rin->second) -
                        (rout == prev.differential_ranks.end() ? 0
                                                               : rout->second);
                    if (expect != page.dim(s, n))
                        throw ConsistencyError(
                            "page " + std::to_string(page.r) +
                            " is not the homology of page " +
                            std::to_string(prev.r));
                }
        }
        ss.pages.push_back(std::move(page));
        if (ss.pages.back().differential_ranks.empty() && r >= L) break;
    }

    // E_infty = page past the last differential
    {
        Page inf;
        inf.r = r_stop + 1;
        for (int s = 0; s < L; ++s)
            for (int n = 0; n <= top; ++n) {
                const long dd = page_entry_dims(L, s, n); // Z_L is stable
                if (dd != 0) inf.dims[{s, n}] = dd;
            }
        ss.infinity = std::move(inf);
    }

    // convergence: filtration of H^n by images matches E_infty columnwise
    for (int n = 0; n <= top; ++n) {
        long sum = 0;
        for (int s = 0; s < L; ++s) sum += ss.infinity.dim(s, n);
        if (sum != ss.total_homology[static_cast<std::size_t>(n)])
            throw ConsistencyError(
                "E_infty does not converge to total homology at degree " +
                std::to_string(n));
    }
    return ss;
}

// ---- Eilenberg-Moore front end ---------------------------------------------

// Total complex of the two-sided bar construction in total degrees
// n = q - p, filtered by bar degree. The filtration index is
// s = p_max - p, so that page entries translate back by p = p_max - s,
// q = n + p.
struct EmFilteredComplex {
    FilteredComplex fc;
    int p_max = 0;
    int bound = 0;
    // for tests/inspection: position of each bar component
    std::map<std::pair<int, int>, std::pair<int, std::size_t>> layout;
    // (p, q) -> (total degree n, offset in C^n)
};

inline EmFilteredComplex em_filtered_complex(const GradedModule& m_left,
                                             const GradedAlgebra& a,
                                             const GradedModule& m_right,
                                             int bound, bool pure_inputs) {
    const BarComplex bc = build_bar_complex(m_left, a, m_right, bound);

    EmFilteredComplex em;
    em.bound = bound;
    int p_max = 0;
    for (const auto& [key, sz] : bc.sizes)
        if (sz > 0) p_max = std::max(p_max, key.first);
    em.p_max = p_max;

    FilteredComplex& fc = em.fc;
    fc.dims.assign(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<std::vector<int>> wts(static_cast<std::size_t>(bound) + 1);
    for (int n = 0; n <= bound; ++n) {
        long off = 0;
        for (int p = p_max; p >= 0; --p) { // descending p = ascending s
            const int q = n + p;
            if (q > bound) continue;
            const std::size_t sz = bc.size(p, q);
            if (sz == 0) continue;
            em.layout[{p, q}] = {n, static_cast<std::size_t>(off)};
            off += static_cast<long>(sz);
            for (std::size_t i = 0; i < sz; ++i)
                wts[static_cast<std::size_t>(n)].push_back(q);
        }
        fc.dims[static_cast<std::size_t>(n)] = off;
    }
    if (pure_inputs) fc.weights = wts;

    // total differential: bar d maps (p, q) -> (p-1, q), i.e. n -> n+1
    for (int n = 0; n < bound; ++n) {
        RatMatrix dn(static_cast<std::size_t>(fc.dim(n + 1)),
                     static_cast<std::size_t>(fc.dim(n)));
        for (const auto& [key, pos] : em.layout) {
            const auto& [p, q] = key;
            if (pos.first != n || p == 0) continue;
            auto tgt = em.layout.find({p - 1, q});
            if (tgt == em.layout.end()) continue;
            const RatMatrix& block = bc.differential(p, q);
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    if (block(i, j) != 0)
                        dn(tgt->second.second + i, pos.second + j) =
                            block(i, j);
        }
        fc.d.push_back(std::move(dn));
    }

    // filtration by bar degree: F^s = components with p <= p_max - s
    fc.filtration_length = p_max + 1;
    fc.filt.resize(static_cast<std::size_t>(std::max(0, p_max)));
    for (int s = 1; s <= p_max; ++s) {
        auto& per_degree = fc.filt[static_cast<std::size_t>(s) - 1];
        for (int n = 0; n <= bound; ++n) {
            std::vector<std::size_t> cols;
            for (const auto& [key, pos] : em.layout) {
                const auto& [p, q] = key;
                if (pos.first != n || p > p_max - s) continue;
                const std::size_t sz = bc.size(p, q);
                for (std::size_t i = 0; i < sz; ++i)
                    cols.push_back(pos.second + i);
            }
            RatMatrix span(static_cast<std::size_t>(fc.dim(n)), cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j)
                span(cols[j], j) = 1;
            per_degree.push_back(std::move(span));
        }
    }
    return em;
}

// Page entries re-keyed to (homological degree p, internal degree q).
inline std::map<std::pair<int, int>, long> em_page_dims(const Page& page,
                                                        int p_max) {
    std::map<std::pair<int, int>, long> out;
    for (const auto& [key, d] : page.dims) {
        const int p = p_max - key.first;
        const int q = key.second + p;
        out[{p, q}] = d;
    }
    return out;
}

// ---- purity degeneration certificate ----------------------------------------

// For pure H, M, N every potential d_r (r >= 2) runs between entries that
// are pure of internal weights q and q - r + 1; the certificate lists each
// such pair together with the weight mismatch that forces the map to vanish.
struct CertificateEntry {
    int r;
    int p_source, q_source;
    int p_target, q_target;
    int weight_source, weight_target;
    bool discharged; // weight_source != weight_target
};

struct DegenerationCertificate {
    std::vector<CertificateEntry> entries;
    bool all_discharged = true;
};

inline DegenerationCertificate
degeneration_certificate(const BigradedTor& t, bool base_pure,
                         bool left_pure, bool right_pure) {
    if (!base_pure || !left_pure || !right_pure)
        throw ImpureInput(
            "degeneration certificate requires pure base and modules; run "
            "the page computation instead");
    DegenerationCertificate cert;
    int max_p = 0;
    for (const auto& [key, d] : t.dims) max_p = std::max(max_p, key.first);
    for (int r = 2; r <= max_p; ++r)
        for (const auto& [key, d] : t.dims) {
            const auto& [p, q] = key;
            if (d == 0) continue;
            const int pt = p - r, qt = q - r + 1;
            if (pt < 0 || t.dim(pt, qt) == 0) continue;
            CertificateEntry e{r, p, q, pt, qt, q, qt, q != qt};
            cert.all_discharged = cert.all_discharged && e.discharged;
            cert.entries.push_back(e);
        }
    return cert;
}

} // namespace emtor

#endif
