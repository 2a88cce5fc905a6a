#include "pfc/modmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pfc {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    if ((m & 1) && m < (1ull << 63)) {
        const Montgomery mont(m);
        return mont.from(mont.pow(mont.to(base), exp));
    }
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 m) {
    i128 old_r = a % m, r = m;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 q = old_r / r;
        i128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("inv_mod: not invertible");
    i128 res = old_s % static_cast<i128>(m);
    if (res < 0) res += m;
    return static_cast<u64>(res);
}

u64 isqrt(u64 n) {
    u64 x = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (x > 0 && static_cast<u128>(x) * x > n) --x;
    while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

u64 isqrt(u128 n) {
    if (n >> 64 == 0) return isqrt(static_cast<u64>(n));
    u64 x = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<u128>(x) * x > n) --x;
    while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

namespace {

bool miller_rabin_round(const Montgomery& mont, u64 d, int s, u64 a) {
    const u64 n = mont.modulus();
    a %= n;
    if (a == 0) return true;
    const u64 one = mont.one();
    const u64 minus_one = n - one;
    u64 x = mont.pow(mont.to(a), d);
    if (x == one || x == minus_one) return true;
    for (int i = 1; i < s; ++i) {
        x = mont.mul(x, x);
        if (x == minus_one) return true;
    }
    return false;
}

bool miller_rabin_round(u64 n, u64 d, int s, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (unsigned q : kSmallPrimes) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    if (n < 97ull * 97ull) return true;
    const u64 d_full = n - 1;
    const int s = std::countr_zero(d_full);
    const u64 d = d_full >> s;
    // Witness sets: {2,7,61} below 2^32; Sinclair's seven bases below 2^64.
    if (n < (1ull << 63)) {
        const Montgomery mont(n);
        if (n < (1ull << 32)) {
            for (u64 a : {2ull, 7ull, 61ull})
                if (!miller_rabin_round(mont, d, s, a)) return false;
            return true;
        }
        for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull})
            if (!miller_rabin_round(mont, d, s, a)) return false;
        return true;
    }
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull})
        if (!miller_rabin_round(n, d, s, a)) return false;
    return true;
}

namespace {

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        const u64 m = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(u64 n, Factorization& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

Factorization factor_integer(u64 n) {
    if (n < 2) throw std::invalid_argument("factor_integer: n must be >= 2");
    Factorization out;
    // Trial division below 10^6, then Pollard-Brent on the cofactor.
    for (u64 q = 2; q < 1'000'000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
        while (n % q == 0) {
            ++out[q];
            n /= q;
        }
    }
    if (n > 1) factor_into(n, out);
    return out;
}

bool is_squarefree(u64 n) {
    if (n == 0) return false;
    if (n == 1) return true;
    for (const auto& [q, e] : factor_integer(n))
        if (e > 1) return false;
    return true;
}

int jacobi(u64 a, u64 n) {
    a %= n;
    int result = 1;
    while (a != 0) {
        const int tz = std::countr_zero(a);
        a >>= tz;
        if ((tz & 1) && (n % 8 == 3 || n % 8 == 5)) result = -result;
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

void require_odd_prime(u64 r, const char* who) {
    if (r < 3 || r % 2 == 0 || !is_prime(r))
        throw std::invalid_argument(std::string(who) + ": modulus must be an odd prime");
}

// Tonelli-Shanks; a must be a nonzero quadratic residue mod the odd prime r.
u64 tonelli_shanks(u64 a, u64 r) {
    if (r % 4 == 3) return pow_mod(a, (r + 1) / 4, r);
    u64 q = r - 1;
    const int s = std::countr_zero(q);
    q >>= s;
    u64 z = 2;
    while (jacobi(z, r) != -1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = pow_mod(z, q, r);
    u64 t = pow_mod(a, q, r);
    u64 x = pow_mod(a, (q + 1) / 2, r);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, r);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, r);
        m = i;
        c = mul_mod(b, b, r);
        t = mul_mod(t, c, r);
        x = mul_mod(x, b, r);
    }
    return x;
}

} // namespace

std::optional<std::array<u64, 2>> sqrt_mod_prime(u64 a, u64 r) {
    require_odd_prime(r, "sqrt_mod_prime");
    a %= r;
    if (a == 0) return std::array<u64, 2>{0, 0};
    if (jacobi(a, r) != 1) return std::nullopt;
    u64 x = tonelli_shanks(a, r);
    u64 y = r - x;
    return std::array<u64, 2>{std::min(x, y), std::max(x, y)};
}

u64 primitive_root(u64 r) {
    require_odd_prime(r, "primitive_root");
    const Factorization fac = factor_integer(r - 1);
    for (u64 g = 2; g < r; ++g) {
        bool ok = true;
        for (const auto& [q, e] : fac) {
            if (pow_mod(g, (r - 1) / q, r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: no generator found");
}

u64 multiplicative_order(u64 a, u64 r) {
    if (r < 2 || !is_prime(r)) throw std::invalid_argument("multiplicative_order: modulus must be prime");
    a %= r;
    if (a == 0) throw std::invalid_argument("multiplicative_order: a must be a unit");
    if (r == 2) return 1;
    u64 order = r - 1;
    for (const auto& [q, e] : factor_integer(r - 1)) {
        for (unsigned i = 0; i < e; ++i) {
            if (pow_mod(a, order / q, r) == 1)
                order /= q;
            else
                break;
        }
    }
    return order;
}

std::vector<unsigned> distinct_prime_divisors(unsigned k) {
    std::vector<unsigned> out;
    for (unsigned q = 2; q * q <= k; ++q) {
        if (k % q == 0) {
            out.push_back(q);
            while (k % q == 0) k /= q;
        }
    }
    if (k > 1) out.push_back(k);
    return out;
}

unsigned euler_phi(unsigned k) {
    unsigned phi = k;
    for (unsigned q : distinct_prime_divisors(k)) phi = phi / q * (q - 1);
    return phi;
}

u64 kth_root_generator(u64 r, unsigned k, const std::vector<unsigned>& k_primes) {
    if (r < 3) return 1;
    const u64 cofactor = (r - 1) / k;
    const Montgomery mont(r);
    const u64 one = mont.one();
    const bool even_k = k % 2 == 0;
    for (u64 g = 2; g < r; ++g) {
        // For q = 2 the order condition on s is g being a non-residue.
        if (even_k && jacobi(g, r) != -1) continue;
        const u64 s = mont.pow(mont.to(g), cofactor);
        if (s == one) continue;
        bool full_order = true;
        for (unsigned q : k_primes) {
            if (q == 2) continue;
            if (mont.pow(s, k / q) == one) {
                full_order = false;
                break;
            }
        }
        if (full_order) return mont.from(s);
    }
    // k = 1 or r = 2: the only root is 1.
    return 1;
}

std::vector<u64> primitive_kth_roots_mod(u64 r, unsigned k) {
    if (k == 0 || r < 2 || !is_prime(r)) throw std::invalid_argument("primitive_kth_roots_mod: r must be prime");
    if ((r - 1) % k != 0) throw std::invalid_argument("primitive_kth_roots_mod: requires r = 1 (mod k)");
    const u64 s = kth_root_generator(r, k, distinct_prime_divisors(k));
    std::vector<u64> roots;
    u64 power = 1;
    for (unsigned l = 1; l <= k; ++l) {
        power = mul_mod(power, s, r);
        if (std::gcd(l, k) == 1) roots.push_back(power);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

u64 IntPoly::eval_mod(i64 x, u64 p) const {
    const u64 xm = reduce_mod(x, p);
    u64 acc = 0;
    mpz_class tmp;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        mpz_fdiv_r_ui(tmp.get_mpz_t(), it->get_mpz_t(), p);
        acc = (mul_mod(acc, xm, p) + tmp.get_ui()) % p;
    }
    return acc;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return IntPoly(std::move(out));
}

IntPoly IntPoly::exact_div_monic(const IntPoly& divisor) const {
    if (divisor.is_zero() || divisor.leading() != 1) throw std::invalid_argument("exact_div_monic: divisor must be monic");
    if (degree() < divisor.degree()) {
        if (is_zero()) return {};
        throw std::domain_error("exact_div_monic: nonzero remainder");
    }
    std::vector<mpz_class> rem = coeffs_;
    const int dd = divisor.degree();
    std::vector<mpz_class> quot(static_cast<std::size_t>(degree() - dd + 1));
    for (int i = degree(); i >= dd; --i) {
        const mpz_class c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        quot[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    for (const auto& c : rem)
        if (c != 0) throw std::domain_error("exact_div_monic: nonzero remainder");
    return IntPoly(std::move(quot));
}

IntPoly cyclotomic_poly(unsigned k) {
    if (k == 0) throw std::invalid_argument("cyclotomic_poly: k must be >= 1");
    std::vector<mpz_class> c(k + 1);
    c[0] = -1;
    c[k] = 1;
    IntPoly result(std::move(c));
    for (unsigned d = 1; d < k; ++d)
        if (k % d == 0) result = result.exact_div_monic(cyclotomic_poly(d));
    return result;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, dense, constant term first, always trimmed.

namespace {

using ModPoly = std::vector<u64>;

void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly reduce(const IntPoly& f, u64 p) {
    ModPoly out(f.coeffs().size());
    mpz_class tmp;
    for (std::size_t i = 0; i < out.size(); ++i) {
        mpz_fdiv_r_ui(tmp.get_mpz_t(), f[i].get_mpz_t(), p);
        out[i] = tmp.get_ui();
    }
    trim(out);
    return out;
}

void make_monic(ModPoly& f, u64 p) {
    if (f.empty() || f.back() == 1) return;
    const u64 inv = inv_mod(f.back(), p);
    for (auto& c : f) c = mul_mod(c, inv, p);
}

ModPoly sub(ModPoly a, const ModPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
    trim(out);
    return out;
}

// Quotient and remainder of a by nonzero b.
std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b, u64 p) {
    if (deg(a) < deg(b)) return {{}, std::move(a)};
    const u64 inv_lead = inv_mod(b.back(), p);
    ModPoly q(static_cast<std::size_t>(deg(a) - deg(b) + 1), 0);
    for (int i = deg(a); i >= deg(b); --i) {
        const u64 c = mul_mod(a[static_cast<std::size_t>(i)], inv_lead, p);
        if (c == 0) continue;
        const std::size_t shift = static_cast<std::size_t>(i - deg(b));
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - mul_mod(c, b[j], p)) % p;
    }
    trim(a);
    trim(q);
    return {std::move(q), std::move(a)};
}

ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p) { return divmod(a, b, p).second; }

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a, p);
    return a;
}

ModPoly powmod(ModPoly base, u64 e, const ModPoly& modulus, u64 p) {
    ModPoly result{1};
    base = rem(base, modulus, p);
    while (e > 0) {
        if (e & 1) result = rem(mul(result, base, p), modulus, p);
        base = rem(mul(base, base, p), modulus, p);
        e >>= 1;
    }
    return result;
}

ModPoly derivative(const ModPoly& f, u64 p) {
    if (f.size() <= 1) return {};
    ModPoly out(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = mul_mod(f[i], i % p, p);
    trim(out);
    return out;
}

// Square-free decomposition over F_p: pairs (square-free factor, multiplicity).
void squarefree_decompose(const ModPoly& f_in, u64 p, unsigned mult_scale, std::vector<std::pair<ModPoly, unsigned>>& out) {
    ModPoly f = f_in;
    make_monic(f, p);
    if (deg(f) < 1) return;
    ModPoly c = gcd(f, derivative(f, p), p);
    ModPoly w = divmod(f, c, p).first;
    unsigned i = 1;
    while (deg(w) > 0) {
        ModPoly y = gcd(w, c, p);
        ModPoly fac = divmod(w, y, p).first;
        if (deg(fac) > 0) out.emplace_back(std::move(fac), i * mult_scale);
        w = std::move(y);
        c = divmod(c, w, p).first;
        ++i;
    }
    if (deg(c) > 0) {
        // c is a p-th power: take the p-th root coefficient-wise.
        ModPoly root(static_cast<std::size_t>(deg(c)) / p + 1, 0);
        for (std::size_t j = 0; j < root.size(); ++j) root[j] = c[j * p];
        trim(root);
        squarefree_decompose(root, p, mult_scale * static_cast<unsigned>(p), out);
    }
}

// Distinct-degree factorization of a monic square-free polynomial.
void distinct_degree(ModPoly f, u64 p, unsigned multiplicity, std::map<unsigned, unsigned>& counts) {
    const ModPoly x{0, 1};
    ModPoly h = rem(x, f, p);
    unsigned i = 1;
    while (deg(f) >= 2 * static_cast<int>(i)) {
        h = powmod(h, p, f, p);
        ModPoly g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            counts[i] += multiplicity * static_cast<unsigned>(deg(g)) / i;
            f = divmod(f, g, p).first;
            h = rem(h, f, p);
        }
        ++i;
    }
    if (deg(f) > 0) counts[static_cast<unsigned>(deg(f))] += multiplicity;
}

// Roots of a monic polynomial that is a product of distinct linear factors.
void split_linear(const ModPoly& g, u64 p, std::vector<u64>& roots) {
    if (deg(g) <= 0) return;
    if (deg(g) == 1) {
        roots.push_back((p - g[0]) % p);
        return;
    }
    for (u64 a = 0;; ++a) {
        const ModPoly shifted{a % p, 1};
        ModPoly h = powmod(shifted, (p - 1) / 2, g, p);
        h = sub(h, ModPoly{1}, p);
        ModPoly d = gcd(g, h, p);
        if (deg(d) > 0 && deg(d) < deg(g)) {
            split_linear(d, p, roots);
            split_linear(divmod(g, d, p).first, p, roots);
            return;
        }
    }
}

} // namespace

std::map<unsigned, unsigned> poly_degree_distribution_mod_p(const IntPoly& f, u64 p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("poly_degree_distribution_mod_p: p must be prime");
    ModPoly fp = reduce(f, p);
    if (f.is_zero() || deg(fp) != f.degree())
        throw std::invalid_argument("poly_degree_distribution_mod_p: p divides the leading coefficient");
    std::vector<std::pair<ModPoly, unsigned>> parts;
    squarefree_decompose(fp, p, 1, parts);
    std::map<unsigned, unsigned> counts;
    for (auto& [part, m] : parts) distinct_degree(part, p, m, counts);
    return counts;
}

std::vector<u64> poly_roots_mod_p(const IntPoly& f, u64 p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("poly_roots_mod_p: p must be prime");
    ModPoly fp = reduce(f, p);
    if (fp.empty()) throw std::invalid_argument("poly_roots_mod_p: polynomial vanishes mod p");
    std::vector<u64> roots;
    if (p == 2) {
        for (u64 x = 0; x < 2; ++x)
            if (f.eval_mod(static_cast<i64>(x), p) == 0) roots.push_back(x);
        return roots;
    }
    make_monic(fp, p);
    const ModPoly x{0, 1};
    ModPoly linear_part = gcd(fp, sub(powmod(x, p, fp, p), x, p), p);
    split_linear(linear_part, p, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace pfc
