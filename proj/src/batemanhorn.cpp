#include "pfc/batemanhorn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfc/errors.hpp"
#include "pfc/omp.hpp"

namespace pfc {

IntPoly bn_r0() { return {1, 6, 18, 36, 36}; }
IntPoly bn_p0() { return {1, 6, 24, 36, 36}; }

LocalCounts local_counts(u64 p, const IntPoly& f, const IntPoly& g) {
    const IntPoly fg = f * g;
    std::vector<mpz_class> reduced;
    const mpz_class pz(static_cast<unsigned long>(p));
    for (const auto& c : fg.coeffs()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t());
        reduced.push_back(r);
    }
    const IntPoly fp(std::move(reduced));
    if (fp.is_zero()) throw std::invalid_argument("local_counts: polynomial vanishes mod " + std::to_string(p));

    LocalCounts lc;
    lc.p = p;
    if (fp.degree() == 0) return lc;
    for (auto [d, n] : poly_degree_distribution_mod_p(fp, p)) {
        if (d == 1) lc.n_p = n;
        if (d == 2) lc.n2 = n;
        if (d == 4) lc.n4 = n;
    }
    return lc;
}

LocalCounts local_counts(u64 p) { return local_counts(p, bn_r0(), bn_p0()); }

namespace {

std::vector<u64> primes_between(u64 lo, u64 hi) {
    std::vector<bool> composite(hi + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= hi; ++i) {
        if (composite[i]) continue;
        if (i >= lo) out.push_back(i);
        for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
    }
    return out;
}

} // namespace

std::pair<double, double> ds_products(u64 cutoff, const IntPoly& f, const IntPoly& g) {
    if (cutoff < 5) throw std::invalid_argument("ds_products: cutoff must be >= 5");
    const std::vector<u64> primes = primes_between(5, cutoff);
    const std::size_t n = primes.size();
    std::vector<double> first(n), second(n);
    std::vector<char> bad(n, 0);

#pragma omp parallel for schedule(dynamic, 256)
    for (std::size_t i = 0; i < n; ++i) {
        const u64 p = primes[i];
        const LocalCounts lc = local_counts(p, f, g);
        if (lc.n_p >= p) {
            bad[i] = 1;
            continue;
        }
        const double x = static_cast<double>(p);
        const double np = lc.n_p;
        first[i] = std::exp(std::log1p(-np / x) - np * std::log1p(-1.0 / x));
        second[i] = std::exp(-static_cast<double>(lc.n2) * std::log1p(-1.0 / (x * x)) -
                             static_cast<double>(lc.n4) * std::log1p(-1.0 / (x * x * x * x)));
    }

    double p1 = 1.0, p2 = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (bad[i]) throw std::invalid_argument("ds_products: N_p >= p at p = " + std::to_string(primes[i]));
        p1 *= first[i];
        p2 *= second[i];
    }
    return {p1, p2};
}

std::pair<double, double> ds_products(u64 cutoff) { return ds_products(cutoff, bn_r0(), bn_p0()); }

BHResult bh_constant(const DSConstants& consts) {
    if (!(consts.residue_r0 > 0.0) || !(consts.residue_p0 > 0.0))
        throw ConfigError("zeta residues must be positive");
    if (consts.cutoff < 5) throw ConfigError("cutoff must be >= 5, got " + std::to_string(consts.cutoff));
    if (consts.gamma.num == 0) throw ConfigError("gamma must be positive");
    const auto [p1, p2] = ds_products(consts.cutoff);
    return {p1, p2, consts.gamma.to_double() / (consts.residue_r0 * consts.residue_p0) * p1 * p2};
}

} // namespace pfc
