#pragma once

// Complete polynomial families (r0, t0, y0, h0, p0) in Q[w]: identity checks,
// evaluation at integer w, interval scans and the family count estimate.

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pfc/estimator.hpp"
#include "pfc/rational.hpp"
#include "pfc/scan.hpp"

namespace pfc {

// Exact rational polynomial, constant term first, no trailing zeros.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<mpq_class> coeffs);
    RatPoly(std::initializer_list<long> coeffs);
    static RatPoly from_int(const IntPoly& f);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    const mpq_class& leading() const { return coeffs_.back(); }

    mpq_class eval(const mpq_class& x) const;

    // f(g(w)).
    RatPoly compose(const RatPoly& g) const;

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const mpq_class& c, const RatPoly& a);
    friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

    // Remainder of division by a nonzero divisor; throws std::domain_error on zero.
    RatPoly mod(const RatPoly& divisor) const;

    std::string str() const;

private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

struct PolynomialFamily {
    unsigned k = 0;
    u64 D = 0;
    RatPoly r0, t0, y0, h0, p0;
    std::string name;

    // deg p0 / deg r0.
    Rational generic_rho() const;
};

// "bn", "k3" or "k3b"; throws std::invalid_argument otherwise.
PolynomialFamily builtin_family(const std::string& name);

struct FamilyCheck {
    bool ok = true;
    std::string failed; ///< first failing identity, empty when ok
};

FamilyCheck verify_family(const PolynomialFamily& fam);

// Record at w0 when r0, t0, y0, h0, p0 are all integers, r and p are primes below 2^64,
// y > 0 and, if rho0 is given, p <= r^rho0 exactly.
std::optional<Sextuple> eval_family_at(const PolynomialFamily& fam, const mpz_class& w0,
                                       std::optional<Rational> rho0 = std::nullopt);

// Largest |w| that can give |r0(w)| <= r_max; every |w| above it gives |r0(w)| > r_max.
u64 family_w_bound(const PolynomialFamily& fam, u64 r_max);

// All records with r_min <= r <= r_max, sorted by (r, t, y).
std::vector<Sextuple> scan_family(const PolynomialFamily& fam, u64 r_min, u64 r_max,
                                  std::optional<Rational> rho0 = std::nullopt);

// c_prime / (deg r0 deg p0) * int du / (log u)^2 between (x/c)^(1/deg r0) at x_lo and x_hi,
// c the leading coefficient of r0. The lower limit is clamped to 2.
EstimateResult family_count_estimate(const PolynomialFamily& fam, double c_prime, double x_lo, double x_hi);

// Line-oriented document: "k=12", "D=3", optional "name=...", and one line per polynomial
// such as "r0: 1 6 18 36 36" (constant term first, rationals as a/b). '#' starts a comment.
// Throws ConfigError on malformed input.
PolynomialFamily parse_family(std::istream& in);

} // namespace pfc
