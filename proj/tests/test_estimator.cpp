#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pfc/errors.hpp"
#include "pfc/estimator.hpp"
#include "pfc/quadfield.hpp"

using namespace pfc;

namespace {

// Composite Simpson in u-space after the substitution u = e^s, fixed n panels.
double fixed_simpson(double rho, double a, double b, int n) {
    const double sa = std::log(a), sb = std::log(b), h = (sb - sa) / n;
    auto f = [&](double s) { return std::exp((rho - 1.0) * s) / (s * s); };
    double acc = f(sa) + f(sb);
    for (int i = 1; i < n; ++i) acc += f(sa + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double closed_form_core(double rho, double x) {
    const double lx = std::log(x);
    return std::pow(x, rho - 1.0) / ((rho - 1.0) * lx * lx);
}

} // namespace

TEST_CASE("log_power_integral matches a fixed-grid oracle") {
    for (double rho : {1.1, 1.5, 1.7, 1.9}) {
        for (auto [a, b] : {std::pair{2.0, 1e6}, {1e6, 1e8}, {1e8, 1e10}, {2.0, 1e12}}) {
            const double o1 = fixed_simpson(rho, a, b, 200'000);
            const double o2 = fixed_simpson(rho, a, b, 400'000);
            REQUIRE(std::abs(o1 - o2) <= 1e-10 * o2);
            const EstimateResult r = log_power_integral(rho, a, b);
            CHECK(r.abs_error_bound >= 0.0);
            CHECK(std::abs(r.value - o2) <= 1e-9 * o2);
        }
    }
    CHECK(log_power_integral(1.5, 1e6, 1e6).value == 0.0);
}

TEST_CASE("quadrature: tightening the tolerance stays inside the error bound") {
    for (double rho : {1.1, 1.5, 1.9}) {
        const EstimateResult coarse = log_power_integral(rho, 2.0, 1e10, 1e-6);
        const EstimateResult fine = log_power_integral(rho, 2.0, 1e10, 5e-7);
        CHECK(std::abs(coarse.value - fine.value) <= coarse.abs_error_bound + 1e-12 * fine.value);
    }
}

TEST_CASE("i_zero: published values") {
    CHECK(std::abs(i_zero(7, 1.7, 1e6, 85698768).value - 1000.00) <= 0.01);
    CHECK(std::abs(i_zero(7, 1.5, 1e6, 2e8).value - 58.17) <= 0.01);
    CHECK(std::abs(i_zero(1, 1.7, 1e6, 85698768).value - 2000.0) <= 0.1);
}

TEST_CASE("heuristic_integral: published values") {
    CHECK(std::abs(heuristic_integral(12, 3, 1.5, 1e8, 1e10).value - 1567.0) <= 0.5);
    CHECK(std::abs(heuristic_integral(8, 23, 1.5, 1e6, 1e8).value - 14.17) <= 0.01);
    CHECK(std::abs(heuristic_integral(28, 1, 1.1, 1e6, 1e8).value - 0.325) <= 0.001);
}

TEST_CASE("heuristic_integral = e(k, D) * i_zero") {
    for (unsigned k : {3u, 4u, 7u, 8u, 12u, 23u, 24u})
        for (u64 D : {1ull, 2ull, 3ull, 7ull, 23ull, 47ull}) {
            const double e = e_factor(k, D);
            const double hi = heuristic_integral(k, D, 1.6, 1e6, 1e9).value;
            const double iz = i_zero(D, 1.6, 1e6, 1e9).value;
            REQUIRE(std::abs(hi - e * iz) <= 1e-12 * hi);
        }
}

TEST_CASE("heuristic_integral is additive over adjacent intervals") {
    const double ab = heuristic_integral(5, 7, 1.7, 1e6, 3e7).value;
    const double bc = heuristic_integral(5, 7, 1.7, 3e7, 85698768).value;
    const double ac = heuristic_integral(5, 7, 1.7, 1e6, 85698768).value;
    CHECK(std::abs(ab + bc - ac) <= 1e-9 * ac);
}

TEST_CASE("estimator parameter validation") {
    CHECK_THROWS_AS(heuristic_integral(2, 3, 1.5, 1e6, 1e8), ConfigError);
    CHECK_THROWS_AS(heuristic_integral(5, 4, 1.5, 1e6, 1e8), ConfigError);
    CHECK_THROWS_AS(heuristic_integral(5, 3, 1.0, 1e6, 1e8), ConfigError);
    CHECK_THROWS_AS(heuristic_integral(5, 3, 2.0, 1e6, 1e8), ConfigError);
    CHECK_THROWS_AS(i_zero(3, 1.5, 1.0, 1e8), ConfigError);
    CHECK_THROWS_AS(i_zero(3, 1.5, 1e8, 1e6), ConfigError);
}

TEST_CASE("closed_form_estimate") {
    // e = 1, w = 2, h = 1 for (5, 2).
    CHECK(closed_form_estimate(5, 2, 1.5, 1e8) == doctest::Approx(1e4 / 0.75 / std::pow(std::log(1e8), 2)));
    CHECK(std::abs(closed_form_estimate(5, 2, 1.5, 1e8) - 39.30) <= 0.01);
    // The (rho - 1) pole.
    CHECK(closed_form_estimate(5, 2, 1.000001, 1e8) / closed_form_estimate(5, 2, 1.0001, 1e8) > 90.0);
    CHECK(closed_form_estimate(5, 2, 1.000000001, 1e8) > 1e6);
}

TEST_CASE("closed form tracks the integral: ratio decreases toward 1") {
    // The integral over [2, x] exceeds the closed form by a positive O(1/log x) term.
    for (double rho : {1.3, 1.5, 1.7, 1.9}) {
        double prev = INFINITY;
        for (double x : {1e8, 1e10, 1e12, 1e14}) {
            const double ratio = log_power_integral(rho, 2.0, x).value / closed_form_core(rho, x);
            CHECK(ratio > 1.0);
            CHECK(ratio < prev);
            prev = ratio;
        }
    }
}

TEST_CASE("closed form ratio lies in [1, 1 + 10/log x] where the correction is small") {
    for (double rho : {1.7, 1.9})
        for (double x : {1e6, 1e8, 1e10, 1e12}) {
            const double ratio = log_power_integral(rho, 2.0, x).value / closed_form_core(rho, x);
            CHECK(ratio >= 1.0);
            CHECK(ratio <= 1.0 + 10.0 / std::log(x));
        }
    for (double x : {1e8, 1e10, 1e12}) {
        const double ratio = log_power_integral(1.5, 2.0, x).value / closed_form_core(1.5, x);
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 1.0 + 10.0 / std::log(x));
    }
}

TEST_CASE("variable_d_sum") {
    CHECK(variable_d_sum(5, 4, 1.5) == doctest::Approx(10.0 / 3.0));
    for (double rho : {1.2, 1.5}) {
        CHECK(variable_d_sum(5, 3, rho) == doctest::Approx(3.0 / rho));
        CHECK(variable_d_sum(12, 3, rho) == doctest::Approx(6.0 / rho));
    }
    // Brute-force enumeration of fundamental discriminants and class numbers.
    auto squarefree = [](long n) {
        for (long q = 2; q * q <= n; ++q)
            if (n % (q * q) == 0) return false;
        return true;
    };
    double expected = 0.0;
    for (long ad = 3; ad <= 100; ++ad) {
        long D;
        if (ad % 4 == 3 && squarefree(ad)) D = ad;
        else if (ad % 4 == 0 && ((ad / 4) % 4 == 1 || (ad / 4) % 4 == 2) && squarefree(ad / 4)) D = ad / 4; // d/4 = 2, 3 (mod 4)
        else continue;
        long h = 0;
        for (long a = 1; a <= ad; ++a)
            for (long b = -a + 1; b <= a; ++b) {
                if ((b * b + ad) % (4 * a)) continue;
                const long c = (b * b + ad) / (4 * a);
                if (c < a || (c == a && b < 0)) continue;
                ++h;
            }
        const double w = D == 1 ? 4 : D == 3 ? 6 : 2;
        const double e = 3 % ad == 0 ? 2 : 1;
        expected += e * w / (2 * 1.5 * h);
    }
    CHECK(variable_d_sum(3, 100, 1.5) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("inverse_class_number_sum") {
    const auto [s20, a20] = inverse_class_number_sum(20);
    CHECK(s20 == doctest::Approx(7.0));
    CHECK(a20 == doctest::Approx(6.0 / std::numbers::pi * std::sqrt(20.0)));
    CHECK(std::abs(a20 - 8.541) < 1e-3);
    const auto [s, a] = inverse_class_number_sum(10'000);
    CHECK(s / a >= 0.9);
    CHECK(s / a <= 1.1);
}

TEST_CASE("variable_d_estimate") {
    const double plain = fixed_simpson(1.5, 2.0, 1e8, 400'000);
    const EstimateResult r = variable_d_estimate(5, 100, 1.5, 1e8);
    CHECK(std::abs(r.value - 10.0 * 6.0 / (1.5 * std::numbers::pi) * plain) <= 1e-9 * r.value);
    // Monotone in x for z = 1.
    double prev = 0.0;
    for (double x : {1e3, 1e5, 1e7, 1e9}) {
        const double v = variable_d_estimate(5, 1, 1.5, x).value;
        CHECK(v > prev);
        prev = v;
    }
    // The weighted field sum approaches (6 / (rho pi)) sqrt(z) at z = 1e4.
    for (unsigned k : {3u, 5u, 12u}) {
        const double integral = log_power_integral(1.5, 2.0, 1e10).value;
        const double lhs = variable_d_estimate(k, 10'000, 1.5, 1e10).value;
        const double rhs = variable_d_sum(k, 10'000, 1.5) * integral;
        CHECK(std::abs(lhs / rhs - 1.0) <= 0.10);
    }
}
