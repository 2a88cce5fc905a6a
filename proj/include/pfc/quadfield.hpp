#pragma once

#include <vector>

#include "pfc/modmath.hpp"

namespace pfc {

/// Invariants of the imaginary quadratic field Q(sqrt(-D)).
struct QuadFieldData {
    u64 D = 0;
    i64 d = 0;     ///< fundamental discriminant: -D if D = 3 (mod 4), else -4D
    u64 h = 0;     ///< class number
    unsigned w = 0; ///< number of roots of unity: 4 (D=1), 6 (D=3), else 2
};

/// Throws ConfigError unless D is a positive square-free integer.
QuadFieldData field_data(u64 D);

i64 fundamental_discriminant(u64 D);

/// Number of reduced forms (a, b, c) with b^2 - 4ac = d, |b| <= a <= c and
/// b >= 0 whenever |b| = a or a = c. Requires d < 0 and d = 0, 1 (mod 4).
u64 class_number(i64 d);

/// 2 iff |d_D| divides k, i.e. sqrt(-D) lies in the k-th cyclotomic field.
unsigned e_factor(unsigned k, u64 D);

/// (3, 3), (4, 1), (6, 3): Q(zeta_k) = Q(sqrt(-D)) and no prime p has 4p = t^2 + D y^2
/// for large r.
bool is_excluded_pair(unsigned k, u64 D);

/// All negative fundamental discriminants with |d| <= z, ordered by |d|.
std::vector<i64> fundamental_discriminants(u64 z);

/// The square-free D with fundamental_discriminant(D) == d.
u64 field_parameter(i64 d);

} // namespace pfc
