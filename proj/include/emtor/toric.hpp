#ifndef EMTOR_TORIC_HPP
#define EMTOR_TORIC_HPP

// Simplicial rational fans and the toric pipeline: smoothness and
// completeness predicates, h-vectors, the Stanley-Reisner module over
// Q[t_1..t_n] (ray variables in degree 2), and its weighted cohomology
// via the Koszul complex.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"
#include "emtor/linalg.hpp"
#include "emtor/tor.hpp"

namespace emtor {

struct Fan {
    int ambient_rank = 0;
    std::vector<std::vector<long>> rays;      // primitive vectors in Z^n
    std::vector<std::vector<int>> max_cones;  // ray index sets
};

namespace detail {

inline long gcd_abs(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

// integer determinant by fraction-free cofactor expansion (small matrices)
inline Int int_det(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    Int det = 1;
    Int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            // fraction-free elimination: row_i = (p*row_i - q*row_col)/prev
            const Int p = m[col][col], q = m[i][col];
            for (std::size_t j = col; j < n; ++j)
                m[i][j] = (p * m[i][j] - q * m[col][j]) / det;
        }
        det = m[col][col];
    }
    return sign * det;
}

inline RatMatrix ray_matrix(const Fan& f, const std::vector<int>& cone) {
    RatMatrix m(static_cast<std::size_t>(f.ambient_rank), cone.size());
    for (std::size_t j = 0; j < cone.size(); ++j)
        for (int i = 0; i < f.ambient_rank; ++i)
            m(static_cast<std::size_t>(i), j) =
                f.rays[static_cast<std::size_t>(cone[j])]
                      [static_cast<std::size_t>(i)];
    return m;
}

// Fourier-Motzkin feasibility for a system of inequalities c.y >= d.
inline bool fm_feasible(std::vector<std::pair<std::vector<Rat>, Rat>> sys,
                        std::size_t nvars) {
    for (std::size_t v = nvars; v-- > 0;) {
        std::vector<std::pair<std::vector<Rat>, Rat>> lower, upper, rest;
        for (auto& c : sys) {
            const Rat a = c.first[v];
            if (a > 0) lower.push_back(std::move(c));
            else if (a < 0) upper.push_back(std::move(c));
            else rest.push_back(std::move(c));
        }
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                // lo: a y_v >= d - c'.y' (a>0);  up: -b y_v >= e - f'.y' (b>0)
                const Rat a = lo.first[v], b = -up.first[v];
                std::vector<Rat> comb(nvars);
                for (std::size_t j = 0; j < nvars; ++j)
                    comb[j] = b * lo.first[j] + a * up.first[j];
                comb[v] = 0;
                rest.push_back({std::move(comb), b * lo.second + a * up.second});
            }
        sys = std::move(rest);
    }
    for (const auto& c : sys)
        if (c.second > 0) return false; // 0 >= positive constant
    return true;
}

// Does cone(c1) intersect cone(c2) in a point outside cone(c1 cap c2)?
// Checked per ray i of c1 \ c2-common part: feasibility of
//   sum a_i v_i = sum b_j w_j, a,b >= 0, a_i >= 1.
inline bool cones_meet_beyond_common_face(const Fan& f,
                                          const std::vector<int>& c1,
                                          const std::vector<int>& c2) {
    std::set<int> common(c1.begin(), c1.end());
    std::vector<int> extra;
    for (int r : c1)
        if (std::find(c2.begin(), c2.end(), r) == c2.end()) extra.push_back(r);
    if (extra.empty()) return false;

    const RatMatrix v1 = ray_matrix(f, c1);
    const RatMatrix v2 = ray_matrix(f, c2);
    RatMatrix neg = v2;
    for (std::size_t i = 0; i < neg.rows(); ++i)
        for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    const RatMatrix k = kernel_basis(hstack(v1, neg)); // (a, b) solutions
    const std::size_t nv = k.cols();

    for (int ray : extra) {
        const std::size_t pos = static_cast<std::size_t>(
            std::find(c1.begin(), c1.end(), ray) - c1.begin());
        std::vector<std::pair<std::vector<Rat>, Rat>> sys;
        for (std::size_t row = 0; row < k.rows(); ++row) {
            std::vector<Rat> c(nv);
            for (std::size_t j = 0; j < nv; ++j) c[j] = k(row, j);
            sys.push_back({std::move(c), row == pos ? Rat(1) : Rat(0)});
        }
        if (fm_feasible(std::move(sys), nv)) return true;
    }
    return false;
}

} // namespace detail

inline void validate_fan(const Fan& f) {
    const int n = f.ambient_rank;
    if (n < 0) throw ValidationError("fan: ambient rank must be >= 0");
    std::set<std::vector<long>> seen;
    for (const auto& ray : f.rays) {
        if (static_cast<int>(ray.size()) != n)
            throw ValidationError("fan: ray of wrong length");
        long g = 0;
        for (long x : ray) g = detail::gcd_abs(g, x);
        if (g != 1)
            throw ValidationError("fan: rays must be primitive and nonzero");
        if (!seen.insert(ray).second)
            throw ValidationError("fan: duplicate ray");
    }
    for (const auto& cone : f.max_cones) {
        std::set<int> idx;
        for (int r : cone) {
            if (r < 0 || r >= static_cast<int>(f.rays.size()))
                throw ValidationError("fan: cone references a missing ray");
            if (!idx.insert(r).second)
                throw ValidationError("fan: repeated ray in a cone");
        }
        if (cone.empty())
            throw ValidationError(
                "fan: empty max cone (the zero cone is implicit)");
        if (rank(detail::ray_matrix(f, cone)) != cone.size())
            throw NonSimplicialFan(
                "fan: max cone rays are linearly dependent");
    }
    for (std::size_t a = 0; a < f.max_cones.size(); ++a)
        for (std::size_t b = a + 1; b < f.max_cones.size(); ++b) {
            if (detail::cones_meet_beyond_common_face(f, f.max_cones[a],
                                                      f.max_cones[b]) ||
                detail::cones_meet_beyond_common_face(f, f.max_cones[b],
                                                      f.max_cones[a]))
                throw ValidationError(
                    "fan: cones " + std::to_string(a) + " and " +
                    std::to_string(b) + " do not meet in a common face");
        }
}

// All cones as sorted ray-index sets: every subset of a max cone is a face
// (simpliciality), plus the zero cone (empty set).
inline std::set<std::vector<int>> all_cones(const Fan& f) {
    std::set<std::vector<int>> cones;
    cones.insert(std::vector<int>{});
    for (const auto& cone : f.max_cones) {
        std::vector<int> sorted = cone;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t k = sorted.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            std::vector<int> face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t{1} << i)) face.push_back(sorted[i]);
            cones.insert(std::move(face));
        }
    }
    return cones;
}

// true iff every maximal cone's rays extend to a lattice basis: all maximal
// minors of the ray matrix have gcd 1
inline bool is_smooth(const Fan& f) {
    validate_fan(f);
    const int n = f.ambient_rank;
    for (const auto& cone : f.max_cones) {
        const std::size_t k = cone.size();
        Int g = 0;
        // all k x k minors: choose k of the n coordinate rows
        std::vector<int> rows(k);
        std::iota(rows.begin(), rows.end(), 0);
        while (true) {
            std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    sub[i][j] = f.rays[static_cast<std::size_t>(cone[j])]
                                      [static_cast<std::size_t>(rows[i])];
            g = boost::multiprecision::gcd(g, abs(detail::int_det(sub)));
            // next combination
            int i = static_cast<int>(k) - 1;
            while (i >= 0 &&
                   rows[static_cast<std::size_t>(i)] ==
                       n - static_cast<int>(k) + i)
                --i;
            if (i < 0) break;
            ++rows[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j)
                rows[j] = rows[j - 1] + 1;
        }
        if (g != 1) return false;
    }
    return true;
}

// Completeness via facet pairing: all max cones full-dimensional, every
// (n-1)-face shared by exactly two max cones, and the dual graph connected.
inline bool is_complete(const Fan& f) {
    validate_fan(f);
    const int n = f.ambient_rank;
    if (f.max_cones.empty()) return n == 0;
    std::map<std::vector<int>, std::vector<std::size_t>> facets;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        std::vector<int> sorted = f.max_cones[c];
        if (static_cast<int>(sorted.size()) != n) return false;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t drop = 0; drop < sorted.size(); ++drop) {
            std::vector<int> facet;
            for (std::size_t i = 0; i < sorted.size(); ++i)
                if (i != drop) facet.push_back(sorted[i]);
            facets[facet].push_back(c);
        }
    }
    for (const auto& [facet, owners] : facets)
        if (owners.size() != 2) return false;
    // dual-graph connectivity
    std::vector<bool> visited(f.max_cones.size(), false);
    std::vector<std::size_t> stack{0};
    visited[0] = true;
    while (!stack.empty()) {
        const std::size_t c = stack.back();
        stack.pop_back();
        for (const auto& [facet, owners] : facets)
            for (std::size_t o : owners)
                if ((owners[0] == c || owners[1] == c) && !visited[o]) {
                    visited[o] = true;
                    stack.push_back(o);
                }
    }
    return std::all_of(visited.begin(), visited.end(),
                       [](bool v) { return v; });
}

// h_k from sum_k f_{k-1} (t-1)^{n-k} = sum_k h_k t^{n-k}, where f_j counts
// j-dimensional cones (f_{-1} = 1 for the zero cone).
inline std::vector<long> h_vector(const Fan& f) {
    validate_fan(f);
    const int n = f.ambient_rank;
    std::vector<long> fcount(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& cone : all_cones(f))
        ++fcount[cone.size()]; // simplicial: dim = number of rays
    std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0); // coeff of t^i
    for (int k = 0; k <= n; ++k) {
        // f_{k-1} (t-1)^{n-k}
        const int e = n - k;
        long binom = 1;
        for (int i = 0; i <= e; ++i) {
            const long sign = (e - i) % 2 == 0 ? 1 : -1;
            poly[static_cast<std::size_t>(i)] +=
                fcount[static_cast<std::size_t>(k)] * sign * binom;
            binom = binom * (e - i) / (i + 1);
        }
    }
    std::vector<long> h(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        h[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(n - k)];
    return h;
}

// Stanley-Reisner module over Q[t_1..t_n]: basis in degree 2k = degree-k
// monomials in the ray variables whose support lies in a cone; t_j acts as
// multiplication by sum_i v_i[j] x_i with non-surviving monomials killed.
inline GradedModule stanley_reisner_module(const Fan& f, int truncation) {
    validate_fan(f);
    const int n = f.ambient_rank;
    const std::size_t nrays = f.rays.size();
    const std::set<std::vector<int>> cones = all_cones(f);

    const auto supported = [&](const std::vector<int>& exp) {
        std::vector<int> supp;
        for (std::size_t i = 0; i < nrays; ++i)
            if (exp[i] > 0) supp.push_back(static_cast<int>(i));
        return cones.count(supp) > 0;
    };

    // per degree 2k: surviving exponent vectors, in enumeration order
    std::vector<std::vector<std::vector<int>>> basis;
    std::vector<std::map<std::vector<int>, std::size_t>> lookup;
    const std::vector<int> xdegs(nrays, 2);
    for (int deg = 0; deg <= truncation; ++deg) {
        basis.emplace_back();
        lookup.emplace_back();
        if (deg % 2 != 0) continue;
        for (auto& exp : enumerate_exponents(xdegs, deg))
            if (supported(exp)) {
                lookup.back()[exp] = basis.back().size();
                basis.back().push_back(std::move(exp));
            }
    }

    GradedModule m;
    m.ring.generator_degrees.assign(static_cast<std::size_t>(n), 2);
    m.truncation = truncation;
    m.dims.resize(static_cast<std::size_t>(truncation) + 1);
    for (int k = 0; k <= truncation; ++k)
        m.dims[static_cast<std::size_t>(k)] =
            static_cast<long>(basis[static_cast<std::size_t>(k)].size());
    m.actions.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k + 2 <= truncation; ++k) {
            const auto& src = basis[static_cast<std::size_t>(k)];
            const auto& tgt = lookup[static_cast<std::size_t>(k) + 2];
            RatMatrix a(basis[static_cast<std::size_t>(k) + 2].size(),
                        src.size());
            for (std::size_t col = 0; col < src.size(); ++col)
                for (std::size_t i = 0; i < nrays; ++i) {
                    const long coef =
                        f.rays[i][static_cast<std::size_t>(j)];
                    if (coef == 0) continue;
                    std::vector<int> e = src[col];
                    ++e[i];
                    auto it = tgt.find(e);
                    if (it != tgt.end()) a(it->second, col) += coef;
                }
            m.actions[static_cast<std::size_t>(j)].push_back(std::move(a));
        }
    return m;
}

struct ToricCohomology {
    bool smooth = false;
    bool complete = false;
    std::vector<long> h;
    BigradedTor tor;
    WeightedGradedVectorSpace cohomology;
};

// Full pipeline: Stanley-Reisner module -> Koszul Tor -> weighted assembly.
inline ToricCohomology toric_cohomology(const Fan& f, int truncation) {
    ToricCohomology out;
    out.smooth = is_smooth(f);
    out.complete = is_complete(f);
    out.h = h_vector(f);
    const GradedModule sr = stanley_reisner_module(f, truncation);
    out.tor = koszul_tor(sr, truncation);
    out.cohomology = assemble_cohomology(out.tor);
    return out;
}

} // namespace emtor

#endif
