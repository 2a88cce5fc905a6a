#pragma once

// Bateman-Horn constant of a pair of integer polynomials in the absolutely
// convergent Davenport-Schinzel form. Defaults to the BN pair (r0, p0).

#include <utility>

#include "pfc/modmath.hpp"
#include "pfc/rational.hpp"

namespace pfc {

struct LocalCounts {
    u64 p = 0;
    unsigned n_p = 0; ///< roots of f*g mod p, with multiplicity
    unsigned n2 = 0;  ///< irreducible quadratic factors
    unsigned n4 = 0;  ///< irreducible quartic factors
};

// BN r0(w) = 36w^4 + 36w^3 + 18w^2 + 6w + 1 and p0(w) = 36w^4 + 36w^3 + 24w^2 + 6w + 1.
IntPoly bn_r0();
IntPoly bn_p0();

// Factor degree counts of f*g mod p. When p divides the leading coefficient the
// reduced polynomial is used. Throws std::invalid_argument if f*g vanishes mod p.
LocalCounts local_counts(u64 p, const IntPoly& f, const IntPoly& g);
LocalCounts local_counts(u64 p);

// {prod (1 - N_p/p)(1 - 1/p)^(-N_p), prod (1 - 1/p^2)^(-N2)(1 - 1/p^4)^(-N4)} over 5 <= p <= cutoff.
// Per-prime factors are computed in parallel and multiplied in ascending order, so the
// result does not depend on the thread count. Throws std::invalid_argument if cutoff < 5
// or N_p >= p for some p.
std::pair<double, double> ds_products(u64 cutoff, const IntPoly& f, const IntPoly& g);
std::pair<double, double> ds_products(u64 cutoff);

struct DSConstants {
    Rational gamma{3, 1};
    double residue_r0 = 0.36105;
    double residue_p0 = 0.52642;
    u64 cutoff = 1'000'000;
};

struct BHResult {
    double first = 0.0;
    double second = 0.0;
    double C = 0.0;
};

// C = gamma / (residue_r0 residue_p0) * first * second for the BN pair.
// Throws ConfigError for non-positive residues or cutoff < 5.
BHResult bh_constant(const DSConstants& consts);

} // namespace pfc
