#include "groupdesign/special_functions.hpp"

#include <cmath>

#include "groupdesign/errors.hpp"

namespace groupdesign {

double jacobi_poly(int k, double a, double b, double x) {
  if (k < 0) throw DomainError("jacobi_poly: degree must be nonnegative");
  if (a <= -1.0 || b <= -1.0) throw DomainError("jacobi_poly: parameters must be > -1");
  if (std::abs(x) > 1.0 + 1e-14) throw DomainError("jacobi_poly: argument outside [-1,1]");

  if (k == 0) return 1.0;
  const double apb = a + b;
  double pm1 = 1.0;
  double p = 0.5 * ((apb + 2.0) * x + (a - b));
  for (int q = 2; q <= k; ++q) {
    const double q2ab = 2.0 * q + apb;
    const double denom = 2.0 * q * (q + apb) * (q2ab - 2.0);
    const double aq = q2ab * (q2ab - 1.0) * (q2ab - 2.0) / denom;
    const double bq = (q2ab - 1.0) * (a * a - b * b) / denom;
    const double cq = 2.0 * (q + a - 1.0) * (q + b - 1.0) * q2ab / denom;
    const double next = (aq * x + bq) * p - cq * pm1;
    pm1 = p;
    p = next;
  }
  return p;
}

double gegenbauer_poly(int n, double lambda, double x) {
  if (n < 0) throw DomainError("gegenbauer_poly: degree must be nonnegative");
  if (lambda <= -0.5) throw DomainError("gegenbauer_poly: lambda must be > -1/2");
  if (std::abs(x) > 1.0 + 1e-14) throw DomainError("gegenbauer_poly: argument outside [-1,1]");

  if (n == 0) return 1.0;
  double cm1 = 1.0;
  double c = 2.0 * lambda * x;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * x * (k + lambda - 1.0) * c - (k + 2.0 * lambda - 2.0) * cm1) / k;
    cm1 = c;
    c = next;
  }
  return c;
}

double assoc_legendre_poly(int l, int m, double x) {
  if (m < 0 || m > l) throw DomainError("assoc_legendre_poly: requires 0 <= m <= l");
  if (std::abs(x) > 1.0 + 1e-14) throw DomainError("assoc_legendre_poly: argument outside [-1,1]");

  // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, then raise the degree.
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 0; i < m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(double n, double k) {
  if (k < 0 || k > n) throw DomainError("log_binomial: requires 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace groupdesign
