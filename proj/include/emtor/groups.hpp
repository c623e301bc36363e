#ifndef EMTOR_GROUPS_HPP
#define EMTOR_GROUPS_HPP

// Catalog of connected linear algebraic groups as weight-graded cohomology
// data: H^*(BG) is polynomial on even generators and pure, H^*(G) is
// exterior on odd generators where a degree-k generator has weight k + 1.

#include <map>
#include <string>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"

namespace emtor {

struct GroupData {
    std::string name;
    std::vector<int> bg_generator_degrees; // even, >= 2

    void validate() const {
        for (int d : bg_generator_degrees)
            if (d < 2 || d % 2 != 0)
                throw ValidationError(
                    "group '" + name +
                    "': BG generator degrees must be even and >= 2");
    }
};

struct WeightedExteriorAlgebra {
    std::vector<int> generator_degrees; // odd
    std::vector<int> generator_weights; // degree + 1
};

inline PolynomialRingData classifying_ring(const GroupData& g) {
    g.validate();
    return PolynomialRingData{g.bg_generator_degrees};
}

// Pure weighted space of H^*(BG) up to the given degree: the Poincare
// series of the polynomial ring with weight = degree everywhere.
inline WeightedGradedVectorSpace classifying_space_series(const GroupData& g,
                                                          int up_to) {
    const PolynomialRingData ring = classifying_ring(g);
    WeightedGradedVectorSpace w;
    for (int k = 0; k <= up_to; ++k) {
        const long d = static_cast<long>(
            enumerate_exponents(ring.generator_degrees, k).size());
        if (d > 0) w.set(k, k, d);
    }
    return w;
}

inline WeightedExteriorAlgebra group_cohomology(const GroupData& g) {
    g.validate();
    WeightedExteriorAlgebra e;
    for (int d : g.bg_generator_degrees) {
        e.generator_degrees.push_back(d - 1);
        e.generator_weights.push_back(d);
    }
    return e;
}

// Full additive expansion of the exterior algebra as a weighted space.
inline WeightedGradedVectorSpace
expand_exterior(const WeightedExteriorAlgebra& e) {
    WeightedGradedVectorSpace w;
    const std::size_t r = e.generator_degrees.size();
    if (r > 24)
        throw ValidationError("exterior expansion: too many generators");
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        int deg = 0, wt = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (std::size_t{1} << i)) {
                deg += e.generator_degrees[i];
                wt += e.generator_weights[i];
            }
        w.set(deg, wt, 1);
    }
    return w;
}

// dim of (Lambda^{<= a} P) in degree k, which equals dim W_{a+k} H^k(G).
inline long complexity_filtration(const GroupData& g, int degree, int level) {
    const WeightedExteriorAlgebra e = group_cohomology(g);
    const std::size_t r = e.generator_degrees.size();
    long count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        int deg = 0, size = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (std::size_t{1} << i)) {
                deg += e.generator_degrees[i];
                ++size;
            }
        if (deg == degree && size <= level) ++count;
    }
    return count;
}

// Grammar: "torus:<n>" | "SL:<n>" | "GL:<n>" | "Sp:<2n>" | "custom:[d1,...]"
inline GroupData catalog_lookup(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos)
        throw UnknownGroup("unknown group spec '" + name + "'");
    const std::string family = name.substr(0, colon);
    const std::string arg = name.substr(colon + 1);
    GroupData g;
    g.name = name;
    const auto parse_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UnknownGroup("bad group parameter in '" + name + "'");
        }
    };
    if (family == "torus") {
        const int n = parse_int(arg);
        if (n < 0) throw UnknownGroup("torus rank must be >= 0");
        g.bg_generator_degrees.assign(static_cast<std::size_t>(n), 2);
    } else if (family == "SL") {
        const int n = parse_int(arg);
        if (n < 1) throw UnknownGroup("SL(n) needs n >= 1");
        for (int k = 2; k <= n; ++k) g.bg_generator_degrees.push_back(2 * k);
    } else if (family == "GL") {
        const int n = parse_int(arg);
        if (n < 1) throw UnknownGroup("GL(n) needs n >= 1");
        for (int k = 1; k <= n; ++k) g.bg_generator_degrees.push_back(2 * k);
    } else if (family == "Sp") {
        const int m = parse_int(arg);
        if (m < 2 || m % 2 != 0)
            throw UnknownGroup("Sp(2n) needs an even parameter >= 2");
        for (int k = 1; k <= m / 2; ++k)
            g.bg_generator_degrees.push_back(4 * k);
    } else if (family == "custom") {
        if (arg.size() < 2 || arg.front() != '[' || arg.back() != ']')
            throw UnknownGroup("custom group needs a [d1,d2,...] list");
        std::string body = arg.substr(1, arg.size() - 2);
        if (!body.empty()) {
            std::size_t pos = 0;
            while (pos <= body.size()) {
                const std::size_t comma = body.find(',', pos);
                const std::string tok =
                    body.substr(pos, comma == std::string::npos
                                         ? std::string::npos
                                         : comma - pos);
                g.bg_generator_degrees.push_back(parse_int(tok));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
    } else {
        throw UnknownGroup("unknown group family '" + family + "'");
    }
    try {
        g.validate();
    } catch (const ValidationError& e) {
        throw UnknownGroup(e.what());
    }
    return g;
}

} // namespace emtor

#endif
