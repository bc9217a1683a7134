#pragma once

#include <span>

#include "groupdesign/complex_matrix.hpp"

namespace groupdesign {

// Shared relative tolerance for rank decisions and pseudo-inverse cutoffs.
// Basis evaluations are accurate to ~1e-12 and grid designs produce exact
// zero eigenvalues, so anything below this is noise.
inline constexpr double kRankTol = 1e-9;

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. Throws ShapeError if m is not square or not Hermitian within
// 1e-12 * (1 + max|m|).
HermitianEig herm_eig(const ComplexMatrix& m);

// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix: eigenvalues below
// tol * lambda_max are treated as exact zeros. Throws NotPsdError if an
// eigenvalue is below -tol * lambda_max.
ComplexMatrix pinv(const ComplexMatrix& m, double tol = kRankTol);

// Number of eigenvalues above tol * lambda_max (0 if lambda_max <= tol).
std::size_t rank_psd(const ComplexMatrix& m, double tol = kRankTol);

// Kiefer trace power of a Hermitian positive definite matrix:
//   finite p != 0:  (sum_i k_i^p)^(1/p)
//   p == 0:         (prod_i k_i)^(1/s)        (determinant limit)
//   p == -inf:      k_min
// Requires p < 1; throws DomainError otherwise and SingularError if the
// matrix is not positive definite.
double trace_power(const ComplexMatrix& c, double p);

// Same, but from precomputed eigenvalues (ascending or not).
double trace_power_from_eigenvalues(std::span<const double> eig, double p);

}  // namespace groupdesign
