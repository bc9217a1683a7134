#pragma once

#include <complex>

namespace groupdesign {

// Wigner d-function d^l_{m,m'}(beta):
//   (-1)^nu C(2l-k, k+a)^{1/2} C(k+b, b)^{-1/2}
//       sin(beta/2)^a cos(beta/2)^b P_k^{(a,b)}(cos beta)
// with k = l - max(|m|,|m'|), a = |m-m'|, b = |m+m'|, and
// nu = m'-m if m' > m else 0. Requires |m|, |m'| <= l, beta in [0, pi].
double wigner_d(int l, int m, int mp, double beta);

// D^l_{m,m'}(alpha, beta, gamma) = e^{-i m alpha} d^l_{m,m'}(beta) e^{-i m' gamma}
std::complex<double> wigner_D(int l, int m, int mp, double alpha, double beta, double gamma);

// Surface-orthonormal spherical harmonic Y_l^m(theta, phi) with the
// Condon-Shortley phase; theta is the polar angle.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

// Hyperspherical harmonic on S^3, proportional to
// sin^l(chi) C_{n-l}^{l+1}(cos chi) Y_l^m(theta, phi) and normalized to
// unit L^2 norm under the probability measure on S^3, so that
// sum_{l,m} |Y_{n;l,m}|^2 = (n+1)^2 pointwise.
// Requires 0 <= l <= n and |m| <= l.
std::complex<double> hyperspherical_harmonic(int n, int l, int m, double chi, double theta,
                                             double phi);

}  // namespace groupdesign
