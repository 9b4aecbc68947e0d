#pragma once

namespace tsflow {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0. Series
// expansion for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Upper tail Q(a, x) = 1 - P(a, x), computed directly in the tail to avoid
// cancellation.
double regularized_gamma_q(double a, double x);

double chi_square_cdf(double x, double df);
double chi_square_sf(double x, double df);

double normal_cdf(double z);

} // namespace tsflow
