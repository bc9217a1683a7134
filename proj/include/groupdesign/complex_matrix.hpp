#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace groupdesign {

using cxdouble = std::complex<double>;

// Dense complex matrix, row-major. Sized for the regression dimensions that
// occur here (D up to a few hundred); no sparse or blocked storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cxdouble& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cxdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  cxdouble* data() { return a_.data(); }
  const cxdouble* data() const { return a_.data(); }

  double max_abs() const;
  double frobenius_norm() const;
  cxdouble trace() const;

  // max_{i,j} |a_ij - conj(a_ji)|, the deviation from Hermitian symmetry.
  double hermitian_deviation() const;
  bool is_hermitian(double rel_tol = 1e-12) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix& operator*=(double s);

  std::vector<cxdouble> apply(const std::vector<cxdouble>& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cxdouble> a_;
};

// Eigendecomposition of a Hermitian matrix: M = V diag(eigenvalues) V*.
// Eigenvalues are real and sorted ascending; V has orthonormal columns.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

}  // namespace groupdesign
