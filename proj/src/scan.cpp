#include "pfc/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pfc/errors.hpp"
#include "pfc/omp.hpp"
#include "pfc/quadfield.hpp"

namespace pfc {

void ScanConfig::validate() const {
    if (k < 3) throw ConfigError("k must be >= 3, got " + std::to_string(k));
    if (k > 100000) throw ConfigError("k must be <= 100000, got " + std::to_string(k));
    if (D == 0 || !is_squarefree(D)) throw ConfigError("D must be a positive square-free integer, got " + std::to_string(D));
    if (D >= (1ull << 32)) throw ConfigError("D must be < 2^32");
    if (!(rho0.num > rho0.den && rho0.num < 2 * rho0.den))
        throw ConfigError("rho0 must satisfy 1 < rho0 < 2, got " + rho0.str());
    if (min_r < 2) throw ConfigError("min must be >= 2");
    if (min_r > max_r) throw ConfigError("min must not exceed max");
    if (max_r > kMaxRangeEnd) throw ConfigError("max must be <= 2^40");
    if (std::pow(static_cast<long double>(max_r), rho0.to_long_double()) >= 0x1p62L)
        throw ConfigError("max^rho0 must be below 2^62");
}

std::string ScanConfig::digest() const {
    std::ostringstream os;
    os << "k=" << k << ";D=" << D << ";rho0=" << rho0.str() << ";min=" << min_r << ";max=" << max_r;
    return os.str();
}

namespace {

mpz_class mpz_from(u64 v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

mpz_class mpz_pow(u64 base, u64 exp) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), mpz_from(base).get_mpz_t(), exp);
    return out;
}

} // namespace

bool within_rho_bound(u64 p, u64 r, Rational rho0) {
    return mpz_pow(p, rho0.den) <= mpz_pow(r, rho0.num);
}

RhoBound rho_bound(u64 r, Rational rho0) {
    const long double x = std::pow(static_cast<long double>(r), rho0.to_long_double());
    const long double fl = std::floor(x);
    const long double frac = x - fl;
    const long double eps = x * 1e-16L + 1e-9L;
    u64 f = static_cast<u64>(fl);
    if (frac > eps && 1.0L - frac > eps) return {f, f + 1};

    // x is within rounding error of an integer: settle floor(r^(num/den)) exactly.
    const mpz_class target = mpz_pow(r, rho0.num);
    while (f > 0 && mpz_pow(f, rho0.den) > target) --f;
    while (mpz_pow(f + 1, rho0.den) <= target) ++f;
    const bool exact = mpz_pow(f, rho0.den) == target;
    return {f, exact ? f : f + 1};
}

namespace {

void require_scan_prime(u64 r, unsigned k) {
    if (r < 2 || !is_prime(r)) throw std::invalid_argument("r must be prime");
    if (k == 0 || (r - 1) % k != 0) throw std::invalid_argument("r must be 1 mod k");
    if (k % r == 0) throw std::invalid_argument("r must not divide k");
}

// Positive y <= ymax in the classes {c, r - c} mod r (multiples of r when c = 0),
// with t^2 + D y^2 = 0 (mod 4), ascending.
void y_in_classes(u64 r, i64 t, u64 D, u64 c, u64 ymax, std::vector<u64>& out) {
    const u64 t2_mod4 = static_cast<u64>((static_cast<i128>(t) * t) % 4);
    auto parity_ok = [&](u64 y) { return (t2_mod4 + (D % 4) * ((y % 4) * (y % 4) % 4)) % 4 == 0; };
    if (c == 0) {
        for (u64 y = r; y <= ymax; y += r)
            if (parity_ok(y)) out.push_back(y);
        return;
    }
    const u64 classes[2] = {std::min(c, r - c), std::max(c, r - c)};
    const int nclasses = classes[0] == classes[1] ? 1 : 2;
    for (u64 base = 0; base <= ymax; base += r) {
        for (int i = 0; i < nclasses; ++i) {
            const u64 y = base + classes[i];
            if (y > ymax) break;
            if (parity_ok(y)) out.push_back(y);
        }
    }
}

u64 y_upper_bound(i64 t, u64 D, u64 ceil_bound) {
    const u128 four_c = static_cast<u128>(ceil_bound) * 4;
    const u128 t2 = static_cast<u128>(static_cast<i128>(t) * t);
    if (t2 >= four_c) return 0;
    return isqrt((four_c - t2) / D);
}

std::optional<Sextuple> assemble(u64 r, i64 t, u64 y, const ScanConfig& cfg, const IntPoly& phi_k) {
    if (y == 0) return std::nullopt;
    const u128 sum = static_cast<u128>(static_cast<i128>(t) * t) + static_cast<u128>(cfg.D) * y * y;
    if (sum % 4 != 0) return std::nullopt;
    const u128 p128 = sum / 4;
    if (p128 >> 64) return std::nullopt;
    const u64 p = static_cast<u64>(p128);
    if (!within_rho_bound(p, r, cfg.rho0)) return std::nullopt;
    if (!is_prime(p)) return std::nullopt;
    if (phi_k.eval_mod(t - 1, r) != 0) return std::nullopt;
    const i128 order = static_cast<i128>(p) + 1 - t;
    if (order <= 0 || order % static_cast<i128>(r) != 0) return std::nullopt;
    Sextuple s;
    s.r = r;
    s.t = t;
    s.y = y;
    s.h = static_cast<u64>(order / static_cast<i128>(r));
    s.p = p;
    s.rho = std::log(static_cast<double>(p)) / std::log(static_cast<double>(r));
    return s;
}

} // namespace

std::vector<i64> trace_candidates(u64 r, unsigned k, Rational rho0, RootMethod method) {
    require_scan_prime(r, k);
    ScanConfig cfg;
    cfg.k = k;
    cfg.rho0 = rho0;
    PrimeScanner scanner(cfg, method);
    return scanner.traces(r, rho_bound(r, rho0));
}

std::vector<u64> y_candidates(u64 r, i64 t, u64 D, Rational rho0) {
    if (r < 3 || !is_prime(r)) throw std::invalid_argument("r must be an odd prime");
    const RhoBound bound = rho_bound(r, rho0);
    const u64 ymax = y_upper_bound(t, D, bound.ceil);
    std::vector<u64> out;
    if (ymax == 0) return out;
    const u64 t_minus_2 = reduce_mod(t - 2, r);
    if (D % r == 0) {
        // (t - 2)^2 = 0 (mod r) is then the whole condition.
        if (t_minus_2 != 0) return out;
        const u64 t2_mod4 = static_cast<u64>((static_cast<i128>(t) * t) % 4);
        for (u64 y = 1; y <= ymax; ++y)
            if ((t2_mod4 + (D % 4) * (y * y % 4)) % 4 == 0) out.push_back(y);
        return out;
    }
    const auto root = sqrt_mod_prime(r - D % r, r);
    if (!root) return out;
    const u64 c = mul_mod(t_minus_2, inv_mod((*root)[0], r), r);
    y_in_classes(r, t, D, c, ymax, out);
    return out;
}

std::optional<Sextuple> assemble_sextuple(u64 r, i64 t, u64 y, const ScanConfig& cfg) {
    return assemble(r, t, y, cfg, cyclotomic_poly(cfg.k));
}

bool recheck_sextuple(const Sextuple& s, const ScanConfig& cfg) {
    if (s.r < cfg.min_r || s.r > cfg.max_r) return false;
    if (!is_prime(s.r) || !is_prime(s.p) || s.y == 0 || s.h == 0) return false;
    const mpz_class t(static_cast<long>(s.t));
    const mpz_class y = mpz_from(s.y);
    const mpz_class p = mpz_from(s.p);
    const mpz_class r = mpz_from(s.r);
    if (t * t + mpz_from(cfg.D) * y * y != 4 * p) return false;
    const mpz_class phi_value = cyclotomic_poly(cfg.k).eval(t - 1);
    if (phi_value % r != 0) return false;
    if (p + 1 - t != r * mpz_from(s.h)) return false;
    if (!within_rho_bound(s.p, s.r, cfg.rho0)) return false;
    if (s.p % s.r == 0 || multiplicative_order(s.p % s.r, s.r) != cfg.k) return false;
    const double rho = std::log(static_cast<double>(s.p)) / std::log(static_cast<double>(s.r));
    return std::abs(rho - s.rho) < 1e-12;
}

// ---------------------------------------------------------------------------

PrimeScanner::PrimeScanner(const ScanConfig& cfg, RootMethod method)
    : cfg_(cfg),
      method_(method),
      phi_k_(cyclotomic_poly(cfg.k)),
      k_primes_(distinct_prime_divisors(cfg.k)),
      rho0_approx_(cfg.rho0.to_double()) {
    for (unsigned l = 1; l <= cfg.k; ++l)
        if (std::gcd(l, cfg.k) == 1) coprime_exponents_.push_back(l);
}

std::vector<u64> PrimeScanner::roots(u64 r) const {
    if (method_ == RootMethod::Factor) return poly_roots_mod_p(phi_k_, r);
    const u64 s = kth_root_generator(r, cfg_.k, k_primes_);
    std::vector<u64> out;
    out.reserve(coprime_exponents_.size());
    u64 power = 1;
    unsigned l = 0;
    for (unsigned target : coprime_exponents_) {
        while (l < target) {
            power = mul_mod(power, s, r);
            ++l;
        }
        out.push_back(power);
    }
    return out;
}

std::vector<i64> PrimeScanner::traces(u64 r, const RhoBound& bound) const {
    const i64 t_max = static_cast<i64>(isqrt(static_cast<u128>(bound.ceil) * 4));
    const i64 ri = static_cast<i64>(r);
    std::vector<i64> out;
    for (u64 zeta : roots(r)) {
        const i64 t0 = static_cast<i64>((zeta + 1) % r);
        // Smallest t = t0 (mod r) with t >= -t_max.
        i64 t = t0 - ((t0 + t_max) / ri) * ri;
        for (; t <= t_max; t += ri) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void PrimeScanner::scan(u64 r, std::vector<Sextuple>& out) const {
    if (cfg_.k % r == 0 || cfg_.D % r == 0) return;
    const u64 minus_d = r - cfg_.D % r;
    if (jacobi(minus_d, r) != 1) return;
    // Pruning only needs an upper bound on r^rho0; assemble() applies the exact test.
    const double approx = std::pow(static_cast<double>(r), rho0_approx_);
    const u64 upper = static_cast<u64>(approx * (1.0 + 1e-12)) + 2;
    const RhoBound bound{upper, upper};
    const std::vector<i64> ts = traces(r, bound);
    if (ts.empty()) return;
    const auto root = sqrt_mod_prime(minus_d, r);
    const u64 inv_root = inv_mod((*root)[0], r);
    std::vector<u64> ys;
    for (i64 t : ts) {
        const u64 ymax = y_upper_bound(t, cfg_.D, bound.ceil);
        if (ymax == 0) continue;
        ys.clear();
        y_in_classes(r, t, cfg_.D, mul_mod(reduce_mod(t - 2, r), inv_root, r), ymax, ys);
        for (u64 y : ys) {
            const u128 p4 = static_cast<u128>(static_cast<i128>(t) * t) + static_cast<u128>(cfg_.D) * y * y;
            if (p4 / 4 > bound.floor) continue;
            if (auto s = assemble(r, t, y, cfg_, phi_k_)) out.push_back(*s);
        }
    }
}

// ---------------------------------------------------------------------------

BlockScanner::BlockScanner(const ScanConfig& cfg, RootMethod method) : prime_scanner_(cfg, method) {
    const u64 limit = isqrt(cfg.max_r) + 1;
    std::vector<bool> composite(limit + 1, false);
    for (u64 q = 2; q <= limit; ++q) {
        if (composite[q]) continue;
        base_primes_.push_back(q);
        k_inverse_.push_back(cfg.k % q == 0 ? 0 : inv_mod(cfg.k % q, q));
        for (u64 m = q * q; m <= limit; m += q) composite[m] = true;
    }
}

std::vector<u64> BlockScanner::primes_in_block(u64 lo, u64 hi) const {
    const u64 k = prime_scanner_.config().k;
    std::vector<u64> primes;
    if (hi < 2 || lo > hi) return primes;
    lo = std::max<u64>(lo, 2);
    // r = 1 + k j
    const u64 j_lo = (lo - 1 + k - 1) / k;
    const u64 j_hi = (hi - 1) / k;
    if (j_lo > j_hi) return primes;
    std::vector<unsigned char> composite(j_hi - j_lo + 1, 0);
    for (std::size_t i = 0; i < base_primes_.size(); ++i) {
        const u64 q = base_primes_[i];
        if (q * q > hi) break;
        if (k_inverse_[i] == 0) continue;
        const u64 residue = (q - k_inverse_[i]) % q;
        const u64 j_min = std::max(j_lo, (q * q - 1 + k - 1) / k);
        u64 j = j_min + (residue + q - j_min % q) % q;
        for (; j <= j_hi; j += q) composite[j - j_lo] = 1;
    }
    for (u64 j = j_lo; j <= j_hi; ++j) {
        if (composite[j - j_lo]) continue;
        const u64 r = 1 + k * j;
        if (r >= 2) primes.push_back(r);
    }
    return primes;
}

std::vector<Sextuple> BlockScanner::scan_block(u64 lo, u64 hi) const {
    std::vector<Sextuple> out;
    for (u64 r : primes_in_block(lo, hi)) prime_scanner_.scan(r, out);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<u64, u64>> split_blocks(u64 lo, u64 hi, u64 width) {
    if (width == 0) throw ConfigError("block width must be positive");
    std::vector<std::pair<u64, u64>> blocks;
    for (u64 start = lo; start <= hi;) {
        const u64 end = hi - start < width ? hi : start + width - 1;
        blocks.emplace_back(start, end);
        if (end == hi) break;
        start = end + 1;
    }
    return blocks;
}

std::vector<std::string> config_warnings(const ScanConfig& cfg) {
    std::vector<std::string> out;
    if (is_excluded_pair(cfg.k, cfg.D))
        out.push_back("(k, D) = (" + std::to_string(cfg.k) + ", " + std::to_string(cfg.D) +
                      ") is an excluded pair: Q(zeta_k) = Q(sqrt(-D)), expect no records for large r");
    return out;
}

namespace {

void emit_warnings(const ScanConfig& cfg, const ScanOptions& opts) {
    if (!opts.on_warning) return;
    for (const auto& w : config_warnings(cfg)) opts.on_warning(w);
}

template <typename PerBlock, typename Result>
void run_blocks(const std::vector<std::pair<u64, u64>>& blocks, unsigned threads, std::vector<Result>& results,
                PerBlock&& per_block) {
    results.assign(blocks.size(), Result{});
    const int n = static_cast<int>(blocks.size());
    const int nthreads = threads == 0 ? omp_get_max_threads() : static_cast<int>(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (int i = 0; i < n; ++i) results[static_cast<std::size_t>(i)] = per_block(blocks[static_cast<std::size_t>(i)]);
    (void)nthreads;
}

} // namespace

std::vector<Sextuple> scan_range(const ScanConfig& cfg, const ScanOptions& opts) {
    cfg.validate();
    emit_warnings(cfg, opts);
    const BlockScanner scanner(cfg, opts.method);
    const auto blocks = split_blocks(cfg.min_r, cfg.max_r, opts.block_width);
    std::vector<std::vector<Sextuple>> per_block;
    run_blocks(blocks, opts.threads, per_block, [&](const auto& b) { return scanner.scan_block(b.first, b.second); });
    std::vector<Sextuple> out;
    for (auto& v : per_block) out.insert(out.end(), v.begin(), v.end());
    return out;
}

u64 count_triples(const ScanConfig& cfg, const ScanOptions& opts) {
    cfg.validate();
    emit_warnings(cfg, opts);
    const BlockScanner scanner(cfg, opts.method);
    const auto blocks = split_blocks(cfg.min_r, cfg.max_r, opts.block_width);
    std::vector<u64> per_block;
    run_blocks(blocks, opts.threads, per_block,
               [&](const auto& b) { return static_cast<u64>(scanner.scan_block(b.first, b.second).size()); });
    return std::accumulate(per_block.begin(), per_block.end(), u64{0});
}

std::vector<Sextuple> scan_range_serial(const ScanConfig& cfg, RootMethod method) {
    cfg.validate();
    const PrimeScanner scanner(cfg, method);
    std::vector<Sextuple> out;
    const u64 k = cfg.k;
    u64 r = cfg.min_r + (k + 1 - cfg.min_r % k) % k;
    for (; r <= cfg.max_r; r += k)
        if (is_prime(r)) scanner.scan(r, out);
    return out;
}

} // namespace pfc
