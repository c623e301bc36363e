#ifndef EMTOR_STRATA_HPP
#define EMTOR_STRATA_HPP

// Orbit stratifications: additive equivariant cohomology as a sum of
// stabilizer classifying-space series with Thom shifts (degree and weight
// both raised by twice the codimension, so purity is preserved), fibration
// series products, and recovery of ordinary cohomology from a
// caller-supplied module realizing the series.

#include <string>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/graded.hpp"
#include "emtor/groups.hpp"
#include "emtor/spectral.hpp"
#include "emtor/tor.hpp"

namespace emtor {

struct Orbit {
    std::string label;
    int codim = 0;
    WeightedGradedVectorSpace stabilizer_series; // pure, H^*(BH)
};

struct OrbitStratification {
    std::vector<Orbit> orbits;
};

inline void validate_stratification(const OrbitStratification& s) {
    bool has_open = false;
    for (const auto& o : s.orbits) {
        if (o.codim < 0)
            throw ValidationError("orbit '" + o.label +
                                  "': codimension must be >= 0");
        if (!o.stabilizer_series.is_pure())
            throw ImpureInput("orbit '" + o.label +
                              "': stabilizer series must be pure");
        has_open = has_open || o.codim == 0;
    }
    if (!has_open)
        throw ValidationError("stratification needs an open orbit (codim 0)");
}

// Degree-n, weight-n dimension = sum over orbits of the stabilizer series
// at degree n - 2c. Always pure: the Thom shift moves along the diagonal.
inline WeightedGradedVectorSpace
equivariant_series(const OrbitStratification& s, int up_to) {
    validate_stratification(s);
    WeightedGradedVectorSpace w;
    for (const auto& o : s.orbits)
        for (const auto& [key, d] : o.stabilizer_series.dims) {
            const int n = key.first + 2 * o.codim;
            if (n <= up_to) w.set(n, n, d);
        }
    return w;
}

// Product of pure Poincare series with weights added; stays pure.
inline WeightedGradedVectorSpace
fibration_series(const WeightedGradedVectorSpace& base,
                 const WeightedGradedVectorSpace& fiber, int up_to) {
    if (!base.is_pure() || !fiber.is_pure())
        throw ImpureInput("fibration series requires pure factors");
    WeightedGradedVectorSpace w;
    for (const auto& [bk, bd] : base.dims)
        for (const auto& [fk, fd] : fiber.dims) {
            const int n = bk.first + fk.first;
            if (n <= up_to) w.set(n, bk.second + fk.second, bd * fd);
        }
    return w;
}

struct StrataRecovery {
    WeightedGradedVectorSpace cohomology;
    BigradedTor tor;
    bool certificate_discharged = false;
};

// Ordinary cohomology from a stratification: the caller must supply the
// module over H^*(BG) realizing the equivariant series (a series alone
// does not determine the action matrices). The result is the assembled
// Koszul Tor, with the purity degeneration certificate recorded.
inline StrataRecovery recover_from_strata(const OrbitStratification& s,
                                          const GroupData& group,
                                          const GradedModule& module,
                                          int up_to) {
    const WeightedGradedVectorSpace series = equivariant_series(s, up_to);
    if (module.ring != classifying_ring(group))
        throw SeriesModuleMismatch(
            "supplied module is not over H^*(BG) of the given group");
    if (module.truncation < up_to)
        throw TruncationExceeded("supplied module truncated below bound");
    for (int n = 0; n <= up_to; ++n)
        if (module.dim(n) != series.total(n))
            throw SeriesModuleMismatch(
                "module series differs from the stratification series in "
                "degree " +
                std::to_string(n));

    StrataRecovery out;
    out.tor = koszul_tor(module, up_to);
    out.cohomology = assemble_cohomology(out.tor);
    const DegenerationCertificate cert =
        degeneration_certificate(out.tor, true, true, true);
    out.certificate_discharged = cert.all_discharged;
    return out;
}

} // namespace emtor

#endif
