#pragma once

// Exhaustive search for triples (r, t, y): r prime in [a, b], r = 1 (mod k),
// r | Phi_k(t - 1), t^2 + D y^2 = 4p with p prime, r | p + 1 - t and p <= r^rho0.
//
// Two kernels produce the same records:
//   - scan_range: segmented sieve over the class 1 (mod k), range split into
//     fixed-width blocks processed with OpenMP and concatenated in range order.
//   - scan_range_serial: reference path stepping through 1 (mod k) with is_prime.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pfc/modmath.hpp"
#include "pfc/rational.hpp"

namespace pfc {

enum class RootMethod {
    PrimitiveRoot, ///< powers of an element of order k
    Factor,        ///< roots of Phi_k mod r by polynomial factorization
};

struct ScanConfig {
    unsigned k = 3;
    u64 D = 1;
    Rational rho0{17, 10};
    u64 min_r = 2;
    u64 max_r = 2;

    // Throws ConfigError naming the offending field.
    void validate() const;

    // Canonical text form, e.g. "k=5;D=2;rho0=39/20;min=11;max=11".
    std::string digest() const;
};

// Largest accepted upper range end; keeps r - 1 < 2^44 and r^rho0 < 2^62.
inline constexpr u64 kMaxRangeEnd = 1ull << 40;

struct Sextuple {
    u64 r = 0;
    i64 t = 0;
    u64 y = 0;
    u64 h = 0;
    u64 p = 0;
    double rho = 0.0;

    // Records are identified by (r, t, y); the rest is derived from them.
    friend bool operator==(const Sextuple& a, const Sextuple& b) {
        return a.r == b.r && a.t == b.t && a.y == b.y && a.h == b.h && a.p == b.p;
    }
    friend auto operator<=>(const Sextuple& a, const Sextuple& b) {
        if (auto c = a.r <=> b.r; c != 0) return c;
        if (auto c = a.t <=> b.t; c != 0) return c;
        return a.y <=> b.y;
    }
};

// floor(r^rho0) and ceil(r^rho0), both exact.
struct RhoBound {
    u64 floor = 0;
    u64 ceil = 0;
};

RhoBound rho_bound(u64 r, Rational rho0);

// Exact p^den <= r^num.
bool within_rho_bound(u64 p, u64 r, Rational rho0);

// All t with (t - 1) mod r a primitive k-th root of unity and t^2 <= 4 ceil(r^rho0),
// ascending. Throws std::invalid_argument unless r is prime, r = 1 (mod k), r does not divide k.
std::vector<i64> trace_candidates(u64 r, unsigned k, Rational rho0, RootMethod method = RootMethod::PrimitiveRoot);

// All y > 0 with D y^2 <= 4 ceil(r^rho0) - t^2, y = +-(t - 2)/sqrt(-D) (mod r) and
// t^2 + D y^2 = 0 (mod 4), ascending. Empty when -D is a non-residue mod r.
std::vector<u64> y_candidates(u64 r, i64 t, u64 D, Rational rho0);

// The record for (r, t, y) if every predicate holds, otherwise absent.
std::optional<Sextuple> assemble_sextuple(u64 r, i64 t, u64 y, const ScanConfig& cfg);

// Independent recheck of every record invariant, including ord_r(p) = k.
bool recheck_sextuple(const Sextuple& s, const ScanConfig& cfg);

// Per-configuration state shared by every prime of a scan.
class PrimeScanner {
public:
    PrimeScanner(const ScanConfig& cfg, RootMethod method);

    // Appends the records for the prime r (already known to be prime, r = 1 mod k), sorted.
    void scan(u64 r, std::vector<Sextuple>& out) const;

    std::vector<i64> traces(u64 r, const RhoBound& bound) const;
    const ScanConfig& config() const { return cfg_; }

private:
    std::vector<u64> roots(u64 r) const;

    ScanConfig cfg_;
    RootMethod method_;
    IntPoly phi_k_;
    std::vector<unsigned> k_primes_;
    std::vector<unsigned> coprime_exponents_;
    double rho0_approx_;
};

// Segmented-sieve block kernel over r = 1 (mod k).
class BlockScanner {
public:
    BlockScanner(const ScanConfig& cfg, RootMethod method);

    // Records with r in [lo, hi], sorted by (r, t, y).
    std::vector<Sextuple> scan_block(u64 lo, u64 hi) const;

    // Primes r = 1 (mod k) in [lo, hi], ascending.
    std::vector<u64> primes_in_block(u64 lo, u64 hi) const;

private:
    PrimeScanner prime_scanner_;
    std::vector<u64> base_primes_;
    std::vector<u64> k_inverse_; // k^{-1} mod q, 0 when q | k
};

struct ScanOptions {
    unsigned threads = 0; ///< 0 = OpenMP default
    u64 block_width = 1'000'000;
    RootMethod method = RootMethod::PrimitiveRoot;
    std::function<void(const std::string&)> on_warning;
};

// [lo, hi] blocks of `width` starting at `lo`, the last one truncated at `hi`.
std::vector<std::pair<u64, u64>> split_blocks(u64 lo, u64 hi, u64 width);

std::vector<std::string> config_warnings(const ScanConfig& cfg);

std::vector<Sextuple> scan_range(const ScanConfig& cfg, const ScanOptions& opts = {});
std::vector<Sextuple> scan_range_serial(const ScanConfig& cfg, RootMethod method = RootMethod::PrimitiveRoot);
u64 count_triples(const ScanConfig& cfg, const ScanOptions& opts = {});

} // namespace pfc
