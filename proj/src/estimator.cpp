#include "pfc/estimator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pfc/errors.hpp"
#include "pfc/quadfield.hpp"

namespace pfc {

namespace {

struct Simpson {
    double rho;
    double f(double s) const { return std::exp((rho - 1.0) * s) / (s * s); }

    // Returns the refined value; accumulates |S2 - S1| / 15 into err.
    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                  double& err) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double diff = left + right - whole;
        if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
            err += std::abs(diff) / 15.0;
            return left + right + diff / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err);
    }
};

void check_rho(double rho) {
    if (!(rho > 1.0 && rho < 2.0)) throw ConfigError("rho0 must satisfy 1 < rho0 < 2, got " + std::to_string(rho));
}

void check_range(double a, double b) {
    if (!(a >= 2.0 && b > a && std::isfinite(b)))
        throw ConfigError("integration range must satisfy 2 <= a < b, got [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
}

void check_k(unsigned k) {
    if (k < 3) throw ConfigError("k must be >= 3, got " + std::to_string(k));
}

double field_weight(const QuadFieldData& f, double rho) {
    return static_cast<double>(f.w) / (2.0 * rho * static_cast<double>(f.h));
}

} // namespace

EstimateResult log_power_integral(double rho, double a, double b, double rel_tol) {
    if (a == b) return {};
    const Simpson sim{rho};
    const double sa = std::log(a), sb = std::log(b);

    // Pilot pass on a fixed grid fixes the absolute tolerance.
    constexpr int pieces = 64;
    const double step = (sb - sa) / pieces;
    double pilot = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double x0 = sa + i * step, x1 = x0 + step;
        pilot += step / 6.0 * (sim.f(x0) + 4.0 * sim.f(0.5 * (x0 + x1)) + sim.f(x1));
    }
    const double tol = rel_tol * std::abs(pilot) / pieces;

    EstimateResult out;
    for (int i = 0; i < pieces; ++i) {
        const double x0 = sa + i * step, x1 = (i + 1 == pieces) ? sb : x0 + step;
        const double f0 = sim.f(x0), fm = sim.f(0.5 * (x0 + x1)), f1 = sim.f(x1);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        out.value += sim.refine(x0, x1, f0, fm, f1, whole, tol, 40, out.abs_error_bound);
    }
    return out;
}

EstimateResult i_zero(u64 D, double rho, double a, double b) {
    check_rho(rho);
    check_range(a, b);
    const QuadFieldData f = field_data(D);
    EstimateResult r = log_power_integral(rho, a, b);
    const double c = field_weight(f, rho);
    return {c * r.value, c * r.abs_error_bound};
}

EstimateResult heuristic_integral(unsigned k, u64 D, double rho, double a, double b) {
    check_k(k);
    EstimateResult r = i_zero(D, rho, a, b);
    const double e = e_factor(k, D);
    return {e * r.value, e * r.abs_error_bound};
}

double closed_form_estimate(unsigned k, u64 D, double rho, double x) {
    check_k(k);
    check_rho(rho);
    if (!(x > 2.0)) throw ConfigError("x must be > 2");
    const QuadFieldData f = field_data(D);
    const double lx = std::log(x);
    return e_factor(k, D) * field_weight(f, rho) / (rho - 1.0) * std::pow(x, rho - 1.0) / (lx * lx);
}

double variable_d_sum(unsigned k, u64 z, double rho) {
    check_k(k);
    check_rho(rho);
    double sum = 0.0;
    for (i64 d : fundamental_discriminants(z)) {
        const u64 D = field_parameter(d);
        sum += e_factor(k, D) * field_weight(field_data(D), rho);
    }
    return sum;
}

std::pair<double, double> inverse_class_number_sum(u64 z) {
    double sum = 0.0;
    for (i64 d : fundamental_discriminants(z)) sum += 1.0 / static_cast<double>(class_number(d));
    return {sum, 6.0 / std::numbers::pi * std::sqrt(static_cast<double>(z))};
}

EstimateResult variable_d_estimate(unsigned k, u64 z, double rho, double x) {
    check_k(k);
    check_rho(rho);
    check_range(2.0, x);
    const EstimateResult r = log_power_integral(rho, 2.0, x);
    const double c = 6.0 / (rho * std::numbers::pi) * std::sqrt(static_cast<double>(z));
    return {c * r.value, c * r.abs_error_bound};
}

} // namespace pfc
