#ifndef EMTOR_GRADED_HPP
#define EMTOR_GRADED_HPP

// Graded vector spaces, truncated graded modules over polynomial rings,
// and the monomial-basis graded algebra of such a ring. Modules are
// stored as explicit degreewise data plus action matrices, never as
// presentations, so every derived quantity is finite exact linear algebra.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/linalg.hpp"

namespace emtor {

struct GradedVectorSpace {
    std::map<int, long> dims; // degree -> dimension, nonzero entries only
    int truncation = 0;       // data undefined above this degree

    long dim(int k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }
};

// coefficient of t^k = dimension in degree k, for k = 0..up_to
inline std::vector<long> poincare_series(const GradedVectorSpace& v,
                                         int up_to) {
    if (up_to > v.truncation)
        throw TruncationExceeded("poincare_series: up_to exceeds truncation");
    std::vector<long> c(static_cast<std::size_t>(up_to) + 1, 0);
    for (const auto& [k, d] : v.dims)
        if (k >= 0 && k <= up_to) c[static_cast<std::size_t>(k)] = d;
    return c;
}

// Degrees of the polynomial generators of H^*(BG): even and >= 2. The
// degree-2 lower bound is what makes the Eilenberg-Moore columns finite
// in each internal degree.
struct PolynomialRingData {
    std::vector<int> generator_degrees;

    void validate() const {
        for (int d : generator_degrees)
            if (d < 2 || d % 2 != 0)
                throw ValidationError(
                    "polynomial ring generators must be even and >= 2");
    }

    int max_generator_degree() const {
        return generator_degrees.empty()
                   ? 0
                   : *std::max_element(generator_degrees.begin(),
                                       generator_degrees.end());
    }

    friend bool operator==(const PolynomialRingData&,
                           const PolynomialRingData&) = default;
};

// Truncated graded module over a polynomial ring. actions[i][k] maps the
// degree-k basis to the degree-(k + d_i) basis; matrices exist for
// k + d_i <= truncation.
struct GradedModule {
    PolynomialRingData ring;
    int truncation = 0;
    std::vector<long> dims; // index = degree, size truncation + 1

    // actions[i][k] : dims[k + d_i] x dims[k]
    std::vector<std::vector<RatMatrix>> actions;

    long dim(int k) const {
        if (k < 0 || k > truncation) return 0;
        return dims[static_cast<std::size_t>(k)];
    }

    const RatMatrix& action(std::size_t gen, int k) const {
        return actions[gen][static_cast<std::size_t>(k)];
    }

    GradedVectorSpace space() const {
        GradedVectorSpace v;
        v.truncation = truncation;
        for (int k = 0; k <= truncation; ++k)
            if (dim(k) > 0) v.dims[k] = dim(k);
        return v;
    }
};

struct ModuleValidationReport {
    bool ok = true;
    std::string message;
    int degree = -1; // first offending degree, when not ok
};

// Shape compatibility and pairwise commutativity of the generator
// actions, checked wherever both composites stay below the truncation.
inline ModuleValidationReport validate_module(const GradedModule& m) {
    ModuleValidationReport rep;
    const auto fail = [&](std::string msg, int deg) {
        rep.ok = false;
        rep.message = std::move(msg);
        rep.degree = deg;
        return rep;
    };
    m.ring.validate();
    const std::size_t r = m.ring.generator_degrees.size();
    if (m.dims.size() != static_cast<std::size_t>(m.truncation) + 1)
        return fail("dims vector does not match truncation", -1);
    if (m.actions.size() != r)
        return fail("one action family required per ring generator", -1);
    for (std::size_t i = 0; i < r; ++i) {
        const int d = m.ring.generator_degrees[i];
        const std::size_t nmat =
            m.truncation >= d ? static_cast<std::size_t>(m.truncation - d) + 1
                              : 0;
        if (m.actions[i].size() != nmat)
            return fail("wrong number of action matrices for generator " +
                            std::to_string(i),
                        -1);
        for (int k = 0; k + d <= m.truncation; ++k) {
            const RatMatrix& a = m.action(i, k);
            if (a.rows() != static_cast<std::size_t>(m.dim(k + d)) ||
                a.cols() != static_cast<std::size_t>(m.dim(k)))
                return fail("action shape mismatch for generator " +
                                std::to_string(i),
                            k);
        }
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            const int di = m.ring.generator_degrees[i];
            const int dj = m.ring.generator_degrees[j];
            for (int k = 0; k + di + dj <= m.truncation; ++k) {
                const RatMatrix ab = m.action(j, k + di) * m.action(i, k);
                const RatMatrix ba = m.action(i, k + dj) * m.action(j, k);
                if (ab != ba)
                    return fail("actions " + std::to_string(i) + " and " +
                                    std::to_string(j) + " do not commute",
                                k);
            }
        }
    return rep;
}

// ---- monomial bookkeeping ------------------------------------------------

// All exponent vectors e with sum e_i * degs_i == target, in lexicographic
// order.
inline std::vector<std::vector<int>>
enumerate_exponents(const std::vector<int>& degs, int target) {
    std::vector<std::vector<int>> out;
    if (target < 0) return out;
    std::vector<int> cur(degs.size(), 0);
    const auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos == degs.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        if (pos + 1 == degs.size()) {
            if (remaining % degs[pos] == 0) {
                cur[pos] = remaining / degs[pos];
                out.push_back(cur);
                cur[pos] = 0;
            }
            return;
        }
        for (int e = 0; e * degs[pos] <= remaining; ++e) {
            cur[pos] = e;
            self(self, pos + 1, remaining - e * degs[pos]);
        }
        cur[pos] = 0;
    };
    if (degs.empty()) {
        if (target == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, target);
    return out;
}

// Basis of a free module: per degree, ordered pairs (monomial exponent
// vector in the ring generators, module generator index).
struct FreeModuleBasis {
    PolynomialRingData ring;
    std::vector<int> gen_degrees;
    int truncation = 0;
    std::vector<std::vector<std::pair<std::vector<int>, int>>> basis;
    std::vector<std::map<std::pair<std::vector<int>, int>, std::size_t>>
        lookup;

    long dim(int k) const {
        if (k < 0 || k > truncation) return 0;
        return static_cast<long>(basis[static_cast<std::size_t>(k)].size());
    }

    std::size_t index(int k, const std::vector<int>& exp, int gen) const {
        const auto& lk = lookup[static_cast<std::size_t>(k)];
        auto it = lk.find({exp, gen});
        if (it == lk.end())
            throw ConsistencyError("free module basis lookup failed");
        return it->second;
    }

    GradedModule to_module() const;
};

inline FreeModuleBasis make_free_basis(const PolynomialRingData& ring,
                                       const std::vector<int>& gen_degrees,
                                       int truncation) {
    ring.validate();
    for (int g : gen_degrees)
        if (g < 0)
            throw ValidationError("free module generator degrees must be >= 0");
    FreeModuleBasis fb;
    fb.ring = ring;
    fb.gen_degrees = gen_degrees;
    fb.truncation = truncation;
    fb.basis.resize(static_cast<std::size_t>(truncation) + 1);
    fb.lookup.resize(static_cast<std::size_t>(truncation) + 1);
    for (int k = 0; k <= truncation; ++k) {
        auto& level = fb.basis[static_cast<std::size_t>(k)];
        for (int g = 0; g < static_cast<int>(gen_degrees.size()); ++g) {
            const int rest = k - gen_degrees[static_cast<std::size_t>(g)];
            for (auto& e : enumerate_exponents(ring.generator_degrees, rest))
                level.emplace_back(std::move(e), g);
        }
        auto& lk = fb.lookup[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < level.size(); ++i) lk[level[i]] = i;
    }
    return fb;
}

inline GradedModule FreeModuleBasis::to_module() const {
    GradedModule m;
    m.ring = ring;
    m.truncation = truncation;
    m.dims.resize(static_cast<std::size_t>(truncation) + 1);
    for (int k = 0; k <= truncation; ++k)
        m.dims[static_cast<std::size_t>(k)] = dim(k);
    const std::size_t r = ring.generator_degrees.size();
    m.actions.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        const int d = ring.generator_degrees[i];
        for (int k = 0; k + d <= truncation; ++k) {
            RatMatrix a(static_cast<std::size_t>(dim(k + d)),
                        static_cast<std::size_t>(dim(k)));
            const auto& level = basis[static_cast<std::size_t>(k)];
            for (std::size_t col = 0; col < level.size(); ++col) {
                std::vector<int> e = level[col].first;
                ++e[i];
                a(index(k + d, e, level[col].second), col) = 1;
            }
            m.actions[i].push_back(std::move(a));
        }
    }
    return m;
}

inline GradedModule free_module(const PolynomialRingData& ring,
                                const std::vector<int>& gen_degrees,
                                int truncation) {
    return make_free_basis(ring, gen_degrees, truncation).to_module();
}

// One-dimensional in degree 0, all actions zero: the coefficient module Q.
inline GradedModule trivial_module(const PolynomialRingData& ring,
                                   int truncation) {
    ring.validate();
    GradedModule m;
    m.ring = ring;
    m.truncation = truncation;
    m.dims.assign(static_cast<std::size_t>(truncation) + 1, 0);
    m.dims[0] = 1;
    m.actions.resize(ring.generator_degrees.size());
    for (std::size_t i = 0; i < ring.generator_degrees.size(); ++i) {
        const int d = ring.generator_degrees[i];
        for (int k = 0; k + d <= truncation; ++k)
            m.actions[i].emplace_back(
                static_cast<std::size_t>(m.dim(k + d)),
                static_cast<std::size_t>(m.dim(k)));
    }
    return m;
}

inline GradedModule truncate(const GradedModule& m, int new_truncation) {
    if (new_truncation > m.truncation)
        throw TruncationExceeded("truncate: cannot extend a module");
    GradedModule t;
    t.ring = m.ring;
    t.truncation = new_truncation;
    t.dims.assign(m.dims.begin(),
                  m.dims.begin() + static_cast<long>(new_truncation) + 1);
    t.actions.resize(m.actions.size());
    for (std::size_t i = 0; i < m.actions.size(); ++i) {
        const int d = m.ring.generator_degrees[i];
        for (int k = 0; k + d <= new_truncation; ++k)
            t.actions[i].push_back(m.action(i, k));
    }
    return t;
}

// Matrix of multiplication by the monomial with the given exponent vector,
// from degree k to degree k + deg(exp).
inline RatMatrix act_monomial(const GradedModule& m,
                              const std::vector<int>& exp, int k) {
    int total = 0;
    for (std::size_t i = 0; i < exp.size(); ++i)
        total += exp[i] * m.ring.generator_degrees[i];
    if (k + total > m.truncation)
        throw TruncationExceeded("act_monomial: degree exceeds truncation");
    RatMatrix cur = RatMatrix::identity(static_cast<std::size_t>(m.dim(k)));
    int deg = k;
    for (std::size_t i = 0; i < exp.size(); ++i)
        for (int e = 0; e < exp[i]; ++e) {
            cur = m.action(i, deg) * cur;
            deg += m.ring.generator_degrees[i];
        }
    return cur;
}

// Graded algebra carrier for the bar complex: the polynomial ring itself on
// its monomial basis. Multiplication is exponent addition; the reduced part
// starts in degree 2.
struct GradedAlgebra {
    PolynomialRingData ring;
    int truncation = 0;
    std::vector<std::vector<std::vector<int>>> basis; // per degree
    std::vector<std::map<std::vector<int>, std::size_t>> lookup;

    long dim(int k) const {
        if (k < 0 || k > truncation) return 0;
        return static_cast<long>(basis[static_cast<std::size_t>(k)].size());
    }

    std::size_t index(int k, const std::vector<int>& exp) const {
        auto it = lookup[static_cast<std::size_t>(k)].find(exp);
        if (it == lookup[static_cast<std::size_t>(k)].end())
            throw ConsistencyError("algebra basis lookup failed");
        return it->second;
    }
};

inline GradedAlgebra polynomial_algebra(const PolynomialRingData& ring,
                                        int truncation) {
    ring.validate();
    GradedAlgebra a;
    a.ring = ring;
    a.truncation = truncation;
    a.basis.resize(static_cast<std::size_t>(truncation) + 1);
    a.lookup.resize(static_cast<std::size_t>(truncation) + 1);
    for (int k = 0; k <= truncation; ++k) {
        a.basis[static_cast<std::size_t>(k)] =
            enumerate_exponents(ring.generator_degrees, k);
        for (std::size_t i = 0; i < a.basis[static_cast<std::size_t>(k)].size();
             ++i)
            a.lookup[static_cast<std::size_t>(k)]
                    [a.basis[static_cast<std::size_t>(k)][i]] = i;
    }
    return a;
}

// Per-(degree, weight) dimensions; nonzero pieces must satisfy
// n <= weight <= 2n.
struct WeightedGradedVectorSpace {
    std::map<std::pair<int, int>, long> dims; // (degree n, weight) -> dim

    long dim(int n, int weight) const {
        auto it = dims.find({n, weight});
        return it == dims.end() ? 0 : it->second;
    }

    void set(int n, int weight, long d) {
        if (d == 0) return;
        if (weight < n || weight > 2 * n)
            throw ValidationError("weight outside [n, 2n] at degree " +
                                  std::to_string(n));
        dims[{n, weight}] += d;
    }

    // total dimension in degree n, all weights
    long total(int n) const {
        long s = 0;
        for (const auto& [key, d] : dims)
            if (key.first == n) s += d;
        return s;
    }

    bool is_pure() const {
        for (const auto& [key, d] : dims)
            if (d != 0 && key.first != key.second) return false;
        return true;
    }

    friend bool operator==(const WeightedGradedVectorSpace&,
                           const WeightedGradedVectorSpace&) = default;
};

} // namespace emtor

#endif
