#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pfc/errors.hpp"
#include "pfc/families.hpp"

using namespace pfc;

namespace {

std::vector<long> ints(const RatPoly& f) {
    std::vector<long> out;
    for (const auto& c : f.coeffs()) {
        REQUIRE(c.get_den() == 1);
        out.push_back(c.get_num().get_si());
    }
    return out;
}

long eval_long(const std::vector<long>& c, long w) {
    long acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
    return acc;
}

ScanConfig config(unsigned k, u64 D, Rational rho, u64 a, u64 b) {
    ScanConfig c;
    c.k = k;
    c.D = D;
    c.rho0 = rho;
    c.min_r = a;
    c.max_r = b;
    return c;
}

} // namespace

TEST_CASE("RatPoly arithmetic") {
    const RatPoly a{1, 2, 3};
    const RatPoly b{-1, 1};
    CHECK(a * b == RatPoly{-1, -1, -1, 3});
    CHECK((a * b).mod(b).is_zero());
    CHECK(a.mod(b) == RatPoly{6}); // a(1) = 6
    CHECK(a.compose(b) == RatPoly{2, -4, 3});
    CHECK(a + b - a == b);
    CHECK(RatPoly(std::vector<mpq_class>{mpq_class(1, 2), mpq_class(0)}).degree() == 0);
    CHECK(a.eval(mpq_class(1, 2)) == mpq_class(11, 4));
    CHECK_THROWS_AS(a.mod(RatPoly{}), std::domain_error);
}

TEST_CASE("builtin families") {
    const auto bn = builtin_family("bn");
    CHECK(bn.k == 12);
    CHECK(bn.D == 3);
    CHECK(ints(bn.r0) == std::vector<long>{1, 6, 18, 36, 36});
    CHECK(bn.generic_rho() == Rational{1, 1});
    const auto k3 = builtin_family("k3");
    CHECK(ints(k3.p0) == std::vector<long>{1, -6, 9});
    CHECK(k3.generic_rho() == Rational{1, 1});
    CHECK(ints(builtin_family("k3b").r0) == std::vector<long>{3, -9, 9});
    CHECK_THROWS_AS(builtin_family("mnt"), std::invalid_argument);
}

TEST_CASE("verify_family") {
    for (const char* name : {"bn", "k3", "k3b"}) {
        INFO(name);
        CHECK(verify_family(builtin_family(name)).ok);
    }
    auto bad = builtin_family("bn");
    bad.p0 = RatPoly{2, 6, 24, 36, 36};
    const FamilyCheck c = verify_family(bad);
    CHECK_FALSE(c.ok);
    CHECK(c.failed == "p0+1-t0 = r0*h0");

    auto bad_trace = builtin_family("bn");
    bad_trace.t0 = RatPoly{1, 0, 7};
    CHECK(verify_family(bad_trace).failed == "r0 | Phi_k(t0-1)");

    auto bad_norm = builtin_family("bn");
    bad_norm.y0 = RatPoly{1, 4, 5};
    CHECK(verify_family(bad_norm).failed == "t0^2+D*y0^2 = 4*p0");
}

TEST_CASE("eval_family_at") {
    const auto bn = builtin_family("bn");
    const auto s = eval_family_at(bn, 1);
    REQUIRE(s);
    CHECK(*s == Sextuple{97, 7, 11, 1, 103, 0});
    CHECK(s->rho == doctest::Approx(std::log(103.0) / std::log(97.0)));
    CHECK_FALSE(eval_family_at(bn, 2)); // 949 = 13 * 73
    const auto w15 = eval_family_at(bn, -15);
    REQUIRE(w15);
    CHECK(w15->r == 1'704'961);
    CHECK(recheck_sextuple(*w15, config(12, 3, {11, 10}, 1'000'000, 100'000'000)));
    // rho0 filter is exact: 103 > 97^1.0 fails, passes at 1.1.
    CHECK_FALSE(eval_family_at(bn, 1, Rational{1, 1}));
    CHECK(eval_family_at(bn, 1, Rational{11, 10}));
    // y must be positive.
    CHECK_FALSE(eval_family_at(builtin_family("k3"), 0));
}

TEST_CASE("family_w_bound is safe on both sides") {
    for (const char* name : {"bn", "k3", "k3b"}) {
        const auto fam = builtin_family(name);
        const auto c = ints(fam.r0);
        for (u64 r_max : {100ull, 10'000ull, 1'000'000ull, 10'000'000'000ull}) {
            const long W = static_cast<long>(family_w_bound(fam, r_max));
            for (long w : {W + 1, W + 2, -W - 1, -W - 2}) REQUIRE(std::abs(eval_long(c, w)) > static_cast<long>(r_max));
        }
    }
}

TEST_CASE("scan_family: BN intervals") {
    const auto bn = builtin_family("bn");
    const auto low = scan_family(bn, 1'000'000, 100'000'000, Rational{11, 10});
    REQUIRE(low.size() == 3);
    std::vector<Sextuple> expected;
    for (long w : {-15, 20, -41}) expected.push_back(*eval_family_at(bn, w));
    CHECK(low == expected);

    const auto high = scan_family(bn, 100'000'000, 10'000'000'000ull, Rational{11, 10});
    std::vector<Sextuple> expected_high;
    for (long w : {-107, -55, -52, 78, 82, 123}) expected_high.push_back(*eval_family_at(bn, w));
    std::sort(expected_high.begin(), expected_high.end());
    CHECK(high == expected_high);

    CHECK(scan_family(builtin_family("k3"), 2, 1'000'000).empty());
}

TEST_CASE("BN family records appear in the exhaustive scan") {
    const auto bn = builtin_family("bn");
    const ScanConfig cfg = config(12, 3, {11, 10}, 13, 3'000'000);
    const auto fam = scan_family(bn, cfg.min_r, cfg.max_r, cfg.rho0);
    const auto all = scan_range(cfg);
    REQUIRE_FALSE(fam.empty());
    for (const auto& s : fam) {
        REQUIRE(recheck_sextuple(s, cfg));
        REQUIRE(std::find(all.begin(), all.end(), s) != all.end());
    }
}

TEST_CASE("family_count_estimate") {
    const auto bn = builtin_family("bn");
    const double c_prime = 2 * 17.651;
    CHECK(std::abs(family_count_estimate(bn, c_prime, 1e6, 1e8).value - 6.05) <= 0.05);
    CHECK(std::abs(family_count_estimate(bn, c_prime, 1e8, 1e10).value - 10.26) <= 0.05);
    CHECK(family_count_estimate(bn, c_prime, 1e8, 1e8).value == 0.0);
    // The leading constant is c_prime / (4 * 4) = 2.206...
    const double unit = family_count_estimate(bn, 16.0, 1e6, 1e8).value;
    CHECK(family_count_estimate(bn, c_prime, 1e6, 1e8).value == doctest::Approx(unit * c_prime / 16.0));
    CHECK_THROWS_AS(family_count_estimate(bn, 0.0, 1e6, 1e8), ConfigError);
}

TEST_CASE("parse_family") {
    std::istringstream good(R"(# BN family
k=12
D=3
name=bn-copy
r0: 1 6 18 36 36
t0: 1 0 6
y0: 1 4 6   # comment
h0: 1
p0: 1 6 24 36 36
)");
    const auto fam = parse_family(good);
    CHECK(fam.name == "bn-copy");
    CHECK(verify_family(fam).ok);
    CHECK(fam.r0 == builtin_family("bn").r0);

    std::istringstream rational("k=3\nD=3\nr0: 1/2 -3/2 9/2\nt0: 1 -3\ny0: -1 3\nh0: 2\np0: 1 -6 9\n");
    const auto half = parse_family(rational);
    CHECK(half.r0.coeffs()[0] == mpq_class(1, 2));
    CHECK(verify_family(half).ok);

    for (const char* bad : {"k=12\nD=3\n", "k=12\nD=4\nr0: 1 1\nt0: 1\ny0: 1\nh0: 1\np0: 1 1\n",
                            "k=12\nD=3\nr0: 1 x\n", "k=12\nD=3\nq0: 1\n", "junk\n",
                            "k=12\nD=3\nr0: 1 1\nr0: 1 1\n", "k=12\nD=3\nr0: 1/0\n"}) {
        INFO(bad);
        std::istringstream in(bad);
        CHECK_THROWS_AS(parse_family(in), ConfigError);
    }
}
