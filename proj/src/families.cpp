#include "pfc/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pfc/errors.hpp"
#include "pfc/quadfield.hpp"

namespace pfc {

RatPoly::RatPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

RatPoly RatPoly::from_int(const IntPoly& f) {
    std::vector<mpq_class> c;
    for (const auto& x : f.coeffs()) c.emplace_back(x);
    return RatPoly(std::move(c));
}

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class RatPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::compose(const RatPoly& g) const {
    RatPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * g + RatPoly(std::vector<mpq_class>{*it});
    return acc;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + mpq_class(-1) * b; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RatPoly(std::move(c));
}

RatPoly operator*(const mpq_class& s, const RatPoly& a) {
    std::vector<mpq_class> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return RatPoly(std::move(c));
}

RatPoly RatPoly::mod(const RatPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<mpq_class> rem = coeffs_;
    const int dd = divisor.degree();
    const mpq_class lead = divisor.leading();
    for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        const mpq_class q = rem[i] / lead;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * divisor.coeffs_[j];
    }
    rem.resize(std::min<std::size_t>(rem.size(), dd));
    return RatPoly(std::move(rem));
}

std::string RatPoly::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ' ';
        out += coeffs_[i].get_str();
    }
    return out.empty() ? "0" : out;
}

Rational PolynomialFamily::generic_rho() const {
    return Rational::make(static_cast<u64>(p0.degree()), static_cast<u64>(r0.degree()));
}

PolynomialFamily builtin_family(const std::string& name) {
    PolynomialFamily f;
    f.name = name;
    if (name == "bn") {
        f.k = 12;
        f.D = 3;
        f.r0 = {1, 6, 18, 36, 36};
        f.t0 = {1, 0, 6};
        f.y0 = {1, 4, 6};
        f.h0 = {1};
        f.p0 = {1, 6, 24, 36, 36};
    } else if (name == "k3" || name == "k3b") {
        f.k = 3;
        f.D = 3;
        // k3b keeps y0 and p0; its trace is 3w - 1 so that r0 | Phi_3(t0 - 1) holds.
        f.r0 = name == "k3" ? RatPoly{1, -3, 9} : RatPoly{3, -9, 9};
        f.t0 = name == "k3" ? RatPoly{1, -3} : RatPoly{-1, 3};
        f.y0 = {-1, 3};
        f.h0 = {1};
        f.p0 = {1, -6, 9};
    } else {
        throw std::invalid_argument("unknown family '" + name + "' (expected bn, k3 or k3b)");
    }
    return f;
}

FamilyCheck verify_family(const PolynomialFamily& fam) {
    if (fam.r0.degree() < 1) return {false, "r0 must be non-constant"};
    const RatPoly phi = RatPoly::from_int(cyclotomic_poly(fam.k));
    if (!phi.compose(fam.t0 - RatPoly{1}).mod(fam.r0).is_zero()) return {false, "r0 | Phi_k(t0-1)"};
    if (fam.p0 + RatPoly{1} - fam.t0 != fam.r0 * fam.h0) return {false, "p0+1-t0 = r0*h0"};
    const RatPoly lhs = fam.t0 * fam.t0 + mpq_class(static_cast<unsigned long>(fam.D)) * (fam.y0 * fam.y0);
    if (lhs != mpq_class(4) * fam.p0) return {false, "t0^2+D*y0^2 = 4*p0"};
    return {};
}

namespace {

// Integer value of f(w0) when it is one.
std::optional<mpz_class> integer_value(const RatPoly& f, const mpq_class& w0) {
    const mpq_class v = f.eval(w0);
    if (v.get_den() != 1) return std::nullopt;
    return v.get_num();
}

bool fits_u64(const mpz_class& v) { return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

u64 to_u64(const mpz_class& v) {
    mpz_class hi = v >> 32, lo = v - (hi << 32);
    return (static_cast<u64>(hi.get_ui()) << 32) | lo.get_ui();
}

} // namespace

std::optional<Sextuple> eval_family_at(const PolynomialFamily& fam, const mpz_class& w0,
                                       std::optional<Rational> rho0) {
    const mpq_class w(w0);
    const auto r = integer_value(fam.r0, w), t = integer_value(fam.t0, w), y = integer_value(fam.y0, w),
               h = integer_value(fam.h0, w), p = integer_value(fam.p0, w);
    if (!r || !t || !y || !h || !p) return std::nullopt;
    if (!fits_u64(*r) || !fits_u64(*p) || !fits_u64(*y) || !fits_u64(*h) || *y <= 0) return std::nullopt;
    if (!t->fits_slong_p()) return std::nullopt;

    Sextuple s;
    s.r = to_u64(*r);
    s.p = to_u64(*p);
    s.y = to_u64(*y);
    s.h = to_u64(*h);
    s.t = t->get_si();
    if (!is_prime(s.r) || !is_prime(s.p)) return std::nullopt;
    if (rho0 && !within_rho_bound(s.p, s.r, *rho0)) return std::nullopt;
    s.rho = std::log(static_cast<double>(s.p)) / std::log(static_cast<double>(s.r));
    return s;
}

u64 family_w_bound(const PolynomialFamily& fam, u64 r_max) {
    const int n = fam.r0.degree();
    if (n < 1) throw std::invalid_argument("family_w_bound: r0 must be non-constant");
    const double c = std::abs(fam.r0.leading().get_d());
    double lower = 0.0;
    for (int i = 0; i < n; ++i) lower += std::abs(fam.r0.coeffs()[i].get_d());
    const double x = std::pow(static_cast<double>(r_max) / c, 1.0 / n);
    // For |w| >= x + lower/c: |r0(w)| >= |w|^(n-1) (c|w| - lower) >= c x^n = r_max.
    const double rigorous = std::ceil(x + lower / c) + 1.0;
    const double leading_only = std::floor(x) + n;
    return static_cast<u64>(std::max(rigorous, leading_only));
}

std::vector<Sextuple> scan_family(const PolynomialFamily& fam, u64 r_min, u64 r_max, std::optional<Rational> rho0) {
    const i64 bound = static_cast<i64>(family_w_bound(fam, r_max));
    const mpz_class lo(static_cast<unsigned long>(r_min)), hi(static_cast<unsigned long>(r_max));
    std::vector<Sextuple> out;
    for (i64 w = -bound; w <= bound; ++w) {
        const mpz_class w0(static_cast<long>(w));
        const mpq_class rv = fam.r0.eval(mpq_class(w0));
        if (rv < lo || rv > hi) continue;
        if (auto s = eval_family_at(fam, w0, rho0)) out.push_back(*s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

EstimateResult family_count_estimate(const PolynomialFamily& fam, double c_prime, double x_lo, double x_hi) {
    if (!(c_prime > 0.0)) throw ConfigError("c_prime must be positive");
    if (!(x_lo <= x_hi)) throw ConfigError("family estimate needs x_lo <= x_hi");
    const double n = fam.r0.degree(), m = fam.p0.degree();
    const double c = std::abs(fam.r0.leading().get_d());
    const double u_lo = std::max(2.0, std::pow(x_lo / c, 1.0 / n));
    const double u_hi = std::max(2.0, std::pow(x_hi / c, 1.0 / n));
    if (u_lo >= u_hi) return {};
    // 1/(log u)^2 is the log-power integrand with exponent 0.
    const EstimateResult r = log_power_integral(2.0, u_lo, u_hi);
    const double scale = c_prime / (n * m);
    return {scale * r.value, scale * r.abs_error_bound};
}

PolynomialFamily parse_family(std::istream& in) {
    PolynomialFamily fam;
    fam.name = "custom";
    std::map<std::string, RatPoly> polys;
    bool have_k = false, have_D = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw ConfigError("family document line " + std::to_string(lineno) + ": " + why);
    };
    auto parse_uint = [&](const std::string& s) -> u64 {
        std::size_t used = 0;
        u64 v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            fail("expected an integer, got '" + s + "'");
        }
        if (used != s.size()) fail("expected an integer, got '" + s + "'");
        return v;
    };
    auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        if (auto colon = line.find(':'); colon != std::string::npos) {
            const std::string key = strip(line.substr(0, colon));
            if (key != "r0" && key != "t0" && key != "y0" && key != "h0" && key != "p0")
                fail("unknown polynomial '" + key + "'");
            if (polys.count(key)) fail("duplicate polynomial '" + key + "'");
            std::istringstream coeffs(line.substr(colon + 1));
            std::vector<mpq_class> c;
            std::string tok;
            while (coeffs >> tok) {
                mpq_class q;
                if (tok.find_first_not_of("+-0123456789/") != std::string::npos || q.set_str(tok, 10) != 0)
                    fail("bad coefficient '" + tok + "'");
                if (q.get_den() == 0) fail("zero denominator in '" + tok + "'");
                q.canonicalize();
                c.push_back(q);
            }
            if (c.empty()) fail("polynomial '" + key + "' has no coefficients");
            polys[key] = RatPoly(std::move(c));
        } else if (auto eq = line.find('='); eq != std::string::npos) {
            const std::string key = strip(line.substr(0, eq));
            const std::string val = strip(line.substr(eq + 1));
            if (key == "k") {
                fam.k = static_cast<unsigned>(parse_uint(val));
                have_k = true;
            } else if (key == "D") {
                fam.D = parse_uint(val);
                have_D = true;
            } else if (key == "name") {
                fam.name = val;
            } else {
                fail("unknown key '" + key + "'");
            }
        } else {
            fail("expected 'key=value' or 'poly: coefficients'");
        }
    }
    if (!have_k || !have_D) throw ConfigError("family document must set k and D");
    if (fam.k < 1 || fam.k > 100000) throw ConfigError("family k out of range");
    field_data(fam.D); // square-free check
    for (const char* key : {"r0", "t0", "y0", "h0", "p0"})
        if (!polys.count(key)) throw ConfigError(std::string("family document is missing ") + key);
    fam.r0 = polys["r0"];
    fam.t0 = polys["t0"];
    fam.y0 = polys["y0"];
    fam.h0 = polys["h0"];
    fam.p0 = polys["p0"];
    if (fam.r0.degree() < 1 || fam.p0.degree() < 1) throw ConfigError("r0 and p0 must be non-constant");
    return fam;
}

} // namespace pfc
