#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "pfc/modmath.hpp"

using namespace pfc;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 brute_order(u64 a, u64 r) {
    u64 x = a % r, m = 1;
    while (x != 1) {
        x = x * a % r;
        ++m;
    }
    return m;
}

int mobius(unsigned n) {
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

// Phi_k = prod_{d | k} (w^d - 1)^mu(k/d), using long arithmetic (fine for small k).
std::vector<long> mobius_cyclotomic(unsigned k) {
    std::vector<long> num{1}, den{1};
    auto mul = [](const std::vector<long>& a, unsigned d) {
        std::vector<long> c(a.size() + d, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            c[i + d] += a[i];
            c[i] -= a[i];
        }
        return c;
    };
    for (unsigned d = 1; d <= k; ++d) {
        if (k % d) continue;
        const int mu = mobius(k / d);
        if (mu == 1) num = mul(num, d);
        if (mu == -1) den = mul(den, d);
    }
    // Exact long division num / den (den monic up to sign).
    std::vector<long> q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        const long c = num[i] / den.back();
        q[i - den.size() + 1] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
    }
    return q;
}

std::vector<long> as_longs(const IntPoly& f) {
    std::vector<long> out;
    for (const auto& c : f.coeffs()) out.push_back(c.get_si());
    return out;
}

} // namespace

TEST_CASE("is_prime: examples and trial division up to 1e6") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(97));
    CHECK(is_prime((1ull << 61) - 1));
    for (u64 n = 0; n <= 1'000'000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
}

TEST_CASE("is_prime: large known values") {
    CHECK(is_prime(18446744073709551557ull)); // largest prime below 2^64
    CHECK_FALSE(is_prime(18446744073709551615ull));
    CHECK_FALSE(is_prime(3215031751ull));       // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ull)); // strong pseudoprime to the first nine prime bases
    CHECK_FALSE(is_prime(4294967297ull));       // 641 * 6700417
    CHECK(is_prime(4294967291ull));
}

TEST_CASE("factor_integer recomposes") {
    CHECK(factor_integer(12) == Factorization{{2, 2}, {3, 1}});
    CHECK(factor_integer(10) == Factorization{{2, 1}, {5, 1}});
    CHECK_THROWS_AS(factor_integer(1), std::invalid_argument);

    std::mt19937_64 rng(7);
    std::vector<u64> samples{1'704'960, 99'276'252, (1ull << 62) - 57, 600851475143ull, 1000000016000000063ull};
    for (int i = 0; i < 200; ++i) samples.push_back(2 + rng() % (1ull << 44));
    for (u64 n : samples) {
        const Factorization f = factor_integer(n);
        u128 prod = 1;
        for (auto [p, e] : f) {
            REQUIRE(is_prime(p));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("sqrt_mod_prime") {
    CHECK(sqrt_mod_prime(9, 11) == std::array<u64, 2>{3, 8});
    CHECK(sqrt_mod_prime(2, 7) == std::array<u64, 2>{3, 4});
    CHECK_FALSE(sqrt_mod_prime(3, 7).has_value());
    CHECK(sqrt_mod_prime(0, 7) == std::array<u64, 2>{0, 0});
    CHECK_THROWS_AS(sqrt_mod_prime(1, 9), std::invalid_argument);

    for (u64 r : {3ull, 5ull, 13ull, 17ull, 97ull, 101ull, 1009ull, 7919ull}) {
        unsigned present = 0;
        for (u64 a = 0; a < r; ++a) {
            if (auto s = sqrt_mod_prime(a, r)) {
                ++present;
                CHECK((*s)[0] * (*s)[0] % r == a);
                CHECK(((*s)[0] + (*s)[1]) % r == 0);
            }
        }
        CHECK(present == (r + 1) / 2);
    }
    // p = 1 (mod 8) with a large 2-power in p - 1 exercises Tonelli-Shanks.
    const u64 p = 998244353;
    for (u64 a : {2ull, 3ull, 5ull, 123456789ull}) {
        if (auto s = sqrt_mod_prime(a, p)) CHECK(mul_mod((*s)[0], (*s)[0], p) == a);
    }
}

TEST_CASE("primitive_root is the smallest generator") {
    CHECK(primitive_root(11) == 2);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(13) == 2);
    CHECK_THROWS_AS(primitive_root(15), std::invalid_argument);
    for (u64 r = 3; r < 2000; ++r) {
        if (!trial_prime(r)) continue;
        const u64 g = primitive_root(r);
        REQUIRE(brute_order(g, r) == r - 1);
        for (u64 h = 2; h < g; ++h) REQUIRE(brute_order(h, r) < r - 1);
    }
}

TEST_CASE("multiplicative_order") {
    CHECK(multiplicative_order(1, 11) == 1);
    CHECK(multiplicative_order(9, 11) == 5);
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK_THROWS(multiplicative_order(0, 7));
    for (u64 a = 1; a < 211; ++a) REQUIRE(multiplicative_order(a, 211) == brute_order(a, 211));
}

TEST_CASE("primitive_kth_roots_mod") {
    CHECK(primitive_kth_roots_mod(11, 5) == std::vector<u64>{3, 4, 5, 9});
    CHECK(primitive_kth_roots_mod(13, 3) == std::vector<u64>{3, 9});
    CHECK(primitive_kth_roots_mod(7, 3) == std::vector<u64>{2, 4});
    CHECK_THROWS_AS(primitive_kth_roots_mod(7, 5), std::invalid_argument);
}

TEST_CASE("cyclotomic_poly") {
    CHECK(cyclotomic_poly(1) == IntPoly{-1, 1});
    CHECK(cyclotomic_poly(2) == IntPoly{1, 1});
    CHECK(cyclotomic_poly(3) == IntPoly{1, 1, 1});
    CHECK(cyclotomic_poly(12) == IntPoly{1, 0, -1, 0, 1});
    for (unsigned k = 1; k <= 60; ++k) {
        const IntPoly f = cyclotomic_poly(k);
        REQUIRE(as_longs(f) == mobius_cyclotomic(k));
        REQUIRE(f.degree() == static_cast<int>(euler_phi(k)));
    }
    // Phi_105 is the first with a coefficient of absolute value 2.
    const IntPoly f = cyclotomic_poly(105);
    CHECK(f.degree() == 48);
    CHECK(*std::min_element(f.coeffs().begin(), f.coeffs().end()) == -2);
}

TEST_CASE("roots of Phi_k mod r: both strategies agree and match the order criterion") {
    for (unsigned k = 1; k <= 30; ++k) {
        const IntPoly phi = cyclotomic_poly(k);
        for (u64 r = 2; r < 10'000; ++r) {
            if (!trial_prime(r) || k % r == 0) continue;
            const std::vector<u64> roots = poly_roots_mod_p(phi, r);
            if (r % k != 1 && k != 1) {
                REQUIRE(roots.empty());
                continue;
            }
            REQUIRE(roots.size() == euler_phi(k));
            REQUIRE(roots == primitive_kth_roots_mod(r, k));
            for (u64 x : roots) REQUIRE(multiplicative_order(x, r) == k);
        }
    }
}

TEST_CASE("kth_root_generator has order exactly k") {
    for (unsigned k : {3u, 4u, 8u, 12u, 23u, 30u}) {
        const auto primes = distinct_prime_divisors(k);
        for (u64 r = k + 1; r < 200'000; r += k) {
            if (!is_prime(r)) continue;
            REQUIRE(multiplicative_order(kth_root_generator(r, k, primes), r) == k);
        }
    }
}

TEST_CASE("poly_degree_distribution_mod_p") {
    const IntPoly phi12 = cyclotomic_poly(12);
    CHECK(poly_degree_distribution_mod_p(phi12, 13) == std::map<unsigned, unsigned>{{1, 4}});
    CHECK(poly_degree_distribution_mod_p(phi12, 11) == std::map<unsigned, unsigned>{{2, 2}});
    CHECK(poly_degree_distribution_mod_p(phi12, 7) == std::map<unsigned, unsigned>{{2, 2}});
    CHECK_THROWS_AS(poly_degree_distribution_mod_p(IntPoly{1, 1, 3}, 3), std::invalid_argument);
    // Repeated factors count with multiplicity: (w - 1)^3 (w^2 + 1) mod 7.
    const IntPoly f = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{1, 0, 1};
    CHECK(poly_degree_distribution_mod_p(f, 7) == std::map<unsigned, unsigned>{{1, 3}, {2, 1}});

    // For p not dividing k, Phi_k splits into phi(k)/ord factors of degree ord = ord_k(p).
    for (unsigned k = 3; k <= 40; ++k) {
        const IntPoly phi = cyclotomic_poly(k);
        for (u64 p = 2; p < 400; ++p) {
            if (!trial_prime(p) || std::gcd<u64>(p, k) != 1) continue;
            unsigned ord = 1;
            for (u64 x = p % k; x != 1; x = x * p % k) ++ord;
            const auto dist = poly_degree_distribution_mod_p(phi, p);
            REQUIRE(dist == std::map<unsigned, unsigned>{{ord, euler_phi(k) / ord}});
        }
    }
}

TEST_CASE("poly_degree_distribution_mod_p: degrees sum to deg f on random input") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        const int deg = 1 + static_cast<int>(rng() % 9);
        std::vector<mpz_class> c;
        for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng() % 41) - 20);
        if (c.back() == 0) c.back() = 1;
        const IntPoly f(c);
        const u64 p = std::vector<u64>{5, 7, 11, 13, 101, 1009}[rng() % 6];
        mpz_class lead_mod = f.leading() % static_cast<unsigned long>(p);
        if (lead_mod == 0) continue;
        unsigned total = 0;
        for (auto [d, n] : poly_degree_distribution_mod_p(f, p)) total += d * n;
        REQUIRE(total == static_cast<unsigned>(f.degree()));
        // Degree-1 count with multiplicity is at least the number of distinct roots.
        const auto roots = poly_roots_mod_p(f, p);
        unsigned brute = 0;
        for (u64 x = 0; x < p; ++x) brute += f.eval_mod(static_cast<i64>(x), p) == 0;
        REQUIRE(roots.size() == brute);
    }
}

TEST_CASE("IntPoly evaluation is exact beyond 2^96") {
    const IntPoly f = cyclotomic_poly(12);
    const mpz_class t("100000000000000000000000");
    CHECK(f.eval(t) == t * t * t * t - t * t + 1);
    CHECK(f.eval_mod(-7, 13) == (2401 - 49 + 1) % 13);
}
