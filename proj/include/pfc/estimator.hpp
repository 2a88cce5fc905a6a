#pragma once

// Heuristic count predictions: the integral I, its closed form, I0, and the
// sums over imaginary quadratic fields with |d| <= z.

#include <utility>

#include "pfc/modmath.hpp"

namespace pfc {

struct EstimateResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
};

// int_a^b du / (u^(2 - rho) (log u)^2), adaptive Simpson in s = log u,
// relative tolerance rel_tol. Requires 2 <= a <= b.
EstimateResult log_power_integral(double rho, double a, double b, double rel_tol = 1e-9);

// e(k,D) w_D / (2 rho h_D) times the integral above. Throws ConfigError on bad input.
EstimateResult heuristic_integral(unsigned k, u64 D, double rho, double a, double b);

// Same without the e(k,D) factor.
EstimateResult i_zero(u64 D, double rho, double a, double b);

// e(k,D) w_D / (2 rho (rho - 1) h_D) * x^(rho - 1) / (log x)^2.
double closed_form_estimate(unsigned k, u64 D, double rho, double x);

// Sum of e(k,D) w_D / (2 rho h_D) over fundamental discriminants -z <= d < 0.
double variable_d_sum(unsigned k, u64 z, double rho);

// {sum of 1/h_d over -z <= d < 0, (6/pi) sqrt(z)}.
std::pair<double, double> inverse_class_number_sum(u64 z);

// (6 / (rho pi)) sqrt(z) * int_2^x. Computed for any z; only meaningful when z is
// small relative to x.
EstimateResult variable_d_estimate(unsigned k, u64 z, double rho, double x);

} // namespace pfc
