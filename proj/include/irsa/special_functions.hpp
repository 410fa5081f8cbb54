#pragma once

namespace irsa {

// Gaussian tail probability Q(x) = P{N(0,1) > x} = erfc(x/sqrt(2))/2.
double q_function(double x);

// Regularized lower incomplete gamma function P(a,x), a > 0, x >= 0.
// Series expansion for x < a+1, Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Regularized upper incomplete gamma function Q(a,x) = 1 - P(a,x).
double regularized_gamma_q(double a, double x);

// CDF of a chi-squared random variable with dof degrees of freedom.
double chi_square_cdf(double x, int dof);

}  // namespace irsa
