#include "groupdesign/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "groupdesign/errors.hpp"

namespace groupdesign {

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

cxdouble ComplexMatrix::trace() const {
  cxdouble t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermitian_deviation() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return dev;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  return square() && hermitian_deviation() <= rel_tol * (1.0 + max_abs());
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("matrix product: inner dimensions differ");
  ComplexMatrix r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cxdouble aik = (*this)(i, k);
      if (aik == cxdouble(0.0)) continue;
      const cxdouble* brow = rhs.data() + k * rhs.cols_;
      cxdouble* rrow = r.data() + i * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) rrow[j] += aik * brow[j];
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix sum: shapes differ");
  ComplexMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += rhs.a_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix difference: shapes differ");
  ComplexMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
  return r;
}

ComplexMatrix& ComplexMatrix::operator*=(double s) {
  for (auto& z : a_) z *= s;
  return *this;
}

std::vector<cxdouble> ComplexMatrix::apply(const std::vector<cxdouble>& x) const {
  if (x.size() != cols_) throw ShapeError("matrix-vector product: size mismatch");
  std::vector<cxdouble> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const cxdouble* row = data() + i * cols_;
    cxdouble acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace

HermitianEig herm_eig(const ComplexMatrix& m) {
  if (!m.square()) throw ShapeError("herm_eig: matrix is not square");
  if (!m.is_hermitian()) throw ShapeError("herm_eig: matrix is not Hermitian within tolerance");

  const std::size_t n = m.rows();
  // Work on the symmetrized copy so roundoff asymmetry cannot accumulate.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());
  const double stop = 1e-14 * scale;
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps && offdiag_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cxdouble apq = a(p, q);
        const double zabs = std::abs(apq);
        if (zabs <= 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Unitary plane rotation g = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
        // with e^{i phi} = apq/|apq|; the angle that zeroes a(p,q).
        const cxdouble phase = apq / zabs;
        const double tau = (app - aqq) / (2.0 * zabs);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cxdouble sp = s * phase;             // s e^{i phi}
        const cxdouble spc = s * std::conj(phase); // s e^{-i phi}

        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const cxdouble aip = a(i, p);
          const cxdouble aiq = a(i, q);
          a(i, p) = c * aip + spc * aiq;
          a(i, q) = -sp * aip + c * aiq;
          a(p, i) = std::conj(a(i, p));
          a(q, i) = std::conj(a(i, q));
        }
        const double d = 2.0 * zabs * c * s;
        a(p, p) = app * c * c + aqq * s * s + d;
        a(q, q) = app * s * s + aqq * c * c - d;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t i = 0; i < n; ++i) {
          const cxdouble vip = v(i, p);
          const cxdouble viq = v(i, q);
          v(i, p) = c * vip + spc * viq;
          v(i, q) = -sp * vip + c * viq;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return eig[i] < eig[j]; });

  HermitianEig result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = eig[order[k]];
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
  }
  return result;
}

ComplexMatrix pinv(const ComplexMatrix& m, double tol) {
  if (tol <= 0) throw DomainError("pinv: tolerance must be positive");
  const HermitianEig e = herm_eig(m);
  const std::size_t n = m.rows();
  const double kmax = e.eigenvalues.empty() ? 0.0 : std::abs(e.eigenvalues.back());
  const double cut = tol * kmax;
  const double neg_cut = cut + 1e-13;  // absolute slack for matrices near zero
  for (double k : e.eigenvalues) {
    if (k < -neg_cut) throw NotPsdError("pinv: matrix has a negative eigenvalue");
  }
  std::vector<double> inv(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = e.eigenvalues[i];
    inv[i] = (k > cut) ? 1.0 / k : 0.0;
  }
  // V diag(inv) V*
  ComplexMatrix r(n, n);
  const ComplexMatrix& v = e.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cxdouble acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (inv[k] == 0.0) continue;
        acc += v(i, k) * inv[k] * std::conj(v(j, k));
      }
      r(i, j) = acc;
      r(j, i) = std::conj(acc);
    }
  }
  return r;
}

std::size_t rank_psd(const ComplexMatrix& m, double tol) {
  const HermitianEig e = herm_eig(m);
  const double kmax = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
  if (kmax <= tol) return 0;
  std::size_t r = 0;
  for (double k : e.eigenvalues)
    if (k > tol * kmax) ++r;
  return r;
}

double trace_power_from_eigenvalues(std::span<const double> eig, double p) {
  if (p >= 1.0) throw DomainError("trace_power: p must be < 1");
  if (eig.empty()) throw DomainError("trace_power: empty spectrum");
  const double kmax = *std::max_element(eig.begin(), eig.end());
  const double kmin = *std::min_element(eig.begin(), eig.end());
  if (kmax <= 0.0 || kmin <= 1e-12 * kmax)
    throw SingularError("trace_power: matrix is not positive definite");

  if (std::isinf(p)) return kmin;  // p = -inf
  if (std::abs(p) < 1e-9) {
    // determinant limit; direct evaluation of (sum k^p)^{1/p} is
    // meaningless this close to p = 0
    double logsum = 0.0;
    for (double k : eig) logsum += std::log(k);
    return std::exp(logsum / static_cast<double>(eig.size()));
  }
  double s = 0.0;
  for (double k : eig) s += std::pow(k, p);
  return std::pow(s, 1.0 / p);
}

double trace_power(const ComplexMatrix& c, double p) {
  const HermitianEig e = herm_eig(c);
  return trace_power_from_eigenvalues(e.eigenvalues, p);
}

}  // namespace groupdesign
