#pragma once

namespace groupdesign {

// Jacobi polynomial P_k^{(a,b)}(x) by the three-term recurrence.
// Requires k >= 0, a > -1, b > -1, |x| <= 1.
double jacobi_poly(int k, double a, double b, double x);

// Gegenbauer polynomial C_n^{lambda}(x): C_0 = 1, C_1 = 2 lambda x.
// Requires n >= 0, lambda > -1/2, |x| <= 1.
double gegenbauer_poly(int n, double lambda, double x);

// Associated Legendre function P_l^m(x) including the Condon-Shortley
// factor (-1)^m, so P_1^1(x) = -sqrt(1-x^2).
// Requires 0 <= m <= l, |x| <= 1.
double assoc_legendre_poly(int l, int m, double x);

// log(n!) for n >= 0.
double log_factorial(int n);

// log of the binomial coefficient C(n, k) for real n, with n >= k >= 0;
// evaluated through lgamma so fractional prefactors stay stable.
double log_binomial(double n, double k);

}  // namespace groupdesign
