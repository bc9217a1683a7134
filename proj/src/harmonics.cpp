#include "groupdesign/harmonics.hpp"

#include <cmath>
#include <numbers>

#include "groupdesign/errors.hpp"
#include "groupdesign/special_functions.hpp"

namespace groupdesign {

namespace {
constexpr double kPi = std::numbers::pi;
using cx = std::complex<double>;
}  // namespace

double wigner_d(int l, int m, int mp, double beta) {
  if (l < 0 || std::abs(m) > l || std::abs(mp) > l)
    throw DomainError("wigner_d: requires |m|, |m'| <= l");
  if (beta < -1e-12 || beta > kPi + 1e-12)
    throw DomainError("wigner_d: beta outside [0, pi]");

  const int k = l - std::max(std::abs(m), std::abs(mp));
  const int a = std::abs(m - mp);
  const int b = std::abs(m + mp);
  const int nu = (mp > m) ? (mp - m) : 0;

  const double logpref =
      0.5 * (log_binomial(2.0 * l - k, static_cast<double>(k + a)) -
             log_binomial(static_cast<double>(k + b), static_cast<double>(b)));
  const double sh = std::sin(0.5 * beta);
  const double ch = std::cos(0.5 * beta);
  const double sign = (nu % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(logpref) * std::pow(sh, a) * std::pow(ch, b) *
         jacobi_poly(k, a, b, std::cos(beta));
}

cx wigner_D(int l, int m, int mp, double alpha, double beta, double gamma) {
  const double d = wigner_d(l, m, mp, beta);
  return std::polar(1.0, -m * alpha - mp * gamma) * d;
}

cx spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw DomainError("spherical_harmonic: requires |m| <= l");
  const int am = std::abs(m);
  const double lognorm = 0.5 * (std::log((2.0 * l + 1.0) / (4.0 * kPi)) + log_factorial(l - am) -
                                log_factorial(l + am));
  const double p = assoc_legendre_poly(l, am, std::cos(theta));
  cx val = std::exp(lognorm) * p * std::polar(1.0, am * phi);
  if (m < 0) {
    val = std::conj(val);
    if (am % 2 != 0) val = -val;
  }
  return val;
}

cx hyperspherical_harmonic(int n, int l, int m, double chi, double theta, double phi) {
  if (n < 0 || l < 0 || l > n || std::abs(m) > l)
    throw DomainError("hyperspherical_harmonic: requires 0 <= l <= n and |m| <= l");
  // N^2 = pi 2^{2l+2} (n+1) (n-l)! (l!)^2 / (n+l+1)!  normalizes each
  // function to unit L^2 norm under the probability measure on S^3.
  const double log_n2 = std::log(kPi) + (2.0 * l + 2.0) * std::log(2.0) + std::log(n + 1.0) +
                        log_factorial(n - l) + 2.0 * log_factorial(l) - log_factorial(n + l + 1);
  const double radial = std::pow(std::sin(chi), l) * gegenbauer_poly(n - l, l + 1.0, std::cos(chi));
  return std::exp(0.5 * log_n2) * radial * spherical_harmonic(l, m, theta, phi);
}

}  // namespace groupdesign
