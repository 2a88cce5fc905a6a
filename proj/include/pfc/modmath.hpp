#pragma once

// Word-sized modular arithmetic, deterministic primality, factorization of
// 64-bit integers, and polynomial root/degree structure modulo a prime.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace pfc {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

// Montgomery form for an odd modulus m < 2^63.
class Montgomery {
public:
    explicit Montgomery(u64 m) : m_(m) {
        u64 inv = m; // Newton iteration for m^{-1} mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - m * inv;
        neg_inv_ = ~inv + 1;
        const u64 r1 = (~m + 1) % m; // 2^64 mod m
        r2_ = static_cast<u64>(static_cast<u128>(r1) * r1 % m);
        one_ = to(1);
    }
    u64 modulus() const { return m_; }
    u64 one() const { return one_; }
    u64 to(u64 a) const { return mul(a % m_, r2_); }
    u64 from(u64 a) const { return reduce(a); }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    u64 pow(u64 a, u64 e) const {
        u64 result = one_;
        while (e > 0) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

private:
    u64 reduce(u128 t) const {
        const u64 u = static_cast<u64>(t) * neg_inv_;
        const u64 res = static_cast<u64>((t + static_cast<u128>(u) * m_) >> 64);
        return res >= m_ ? res - m_ : res;
    }
    u64 m_;
    u64 neg_inv_;
    u64 r2_;
    u64 one_;
};

u64 pow_mod(u64 base, u64 exp, u64 m);

// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 inv_mod(u64 a, u64 m);

// Reduces a signed value into [0, m).
inline u64 reduce_mod(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 isqrt(u64 n);
u64 isqrt(u128 n);

// Deterministic for every n < 2^64.
bool is_prime(u64 n);

// Prime -> exponent. Multiplies back to the factored integer.
using Factorization = std::map<u64, unsigned>;

// Throws std::invalid_argument for n < 2.
Factorization factor_integer(u64 n);

bool is_squarefree(u64 n);

// Jacobi symbol (a / n) for odd n.
int jacobi(u64 a, u64 n);

// {x, r - x} with x <= r - x and x^2 = a (mod r); {0, 0} when a = 0.
// Absent when a is a non-residue. Throws std::invalid_argument unless r is an odd prime.
std::optional<std::array<u64, 2>> sqrt_mod_prime(u64 a, u64 r);

// Smallest generator of (Z/rZ)^*. Throws std::invalid_argument unless r is an odd prime.
u64 primitive_root(u64 r);

// Smallest m >= 1 with a^m = 1 (mod r).
u64 multiplicative_order(u64 a, u64 r);

// Sorted set of residues of multiplicative order exactly k, i.e. the roots of
// Phi_k mod r. Requires r prime, r = 1 (mod k); throws std::invalid_argument otherwise.
std::vector<u64> primitive_kth_roots_mod(u64 r, unsigned k);

// Element of order exactly k in (Z/rZ)^*: g^((r-1)/k) for the smallest base g
// whose image has order k. Any primitive root qualifies, so the powers of the
// result coprime to k are exactly primitive_kth_roots_mod(r, k).
// `k_primes` are the distinct prime divisors of k.
u64 kth_root_generator(u64 r, unsigned k, const std::vector<unsigned>& k_primes);

std::vector<unsigned> distinct_prime_divisors(unsigned k);
unsigned euler_phi(unsigned k);

// Exact integer polynomial, constant term first. Zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& operator[](std::size_t i) const { return coeffs_[i]; }
    const mpz_class& leading() const { return coeffs_.back(); }

    mpz_class eval(const mpz_class& x) const;
    u64 eval_mod(i64 x, u64 p) const;

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

    // Exact division by a monic divisor; throws std::domain_error on a nonzero remainder.
    IntPoly exact_div_monic(const IntPoly& divisor) const;

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

// Phi_k by exact division of w^k - 1 by the Phi_d, d | k, d < k. Phi_1 = w - 1.
IntPoly cyclotomic_poly(unsigned k);

// Irreducible-factor counts of f mod p by degree, with multiplicity.
// Throws std::invalid_argument when p divides the leading coefficient.
std::map<unsigned, unsigned> poly_degree_distribution_mod_p(const IntPoly& f, u64 p);

// Sorted distinct roots of f mod p (equal-degree splitting with deterministic shifts).
std::vector<u64> poly_roots_mod_p(const IntPoly& f, u64 p);

} // namespace pfc
