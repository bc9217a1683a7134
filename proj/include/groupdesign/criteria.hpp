#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupdesign/complex_matrix.hpp"
#include "groupdesign/design.hpp"
#include "groupdesign/linalg.hpp"
#include "groupdesign/model.hpp"

namespace groupdesign {

// A choice of complete eigenvalue levels {k_0 < ... < k_q} of a model.
// The induced selection matrix K (identity blocks on the chosen levels,
// zeros elsewhere) satisfies K*K = I_s with s = sum of the selected
// multiplicities; it is materialized only for tests, all computations
// slice indices instead.
class SelectionSet {
 public:
  SelectionSet(const Model& model, std::vector<std::size_t> levels);
  static SelectionSet full(const Model& model);

  std::size_t size() const { return indices_.size(); }                 // s
  const std::vector<std::size_t>& levels() const { return levels_; }
  const std::vector<std::size_t>& indices() const { return indices_; }  // flat basis indices
  std::size_t dimension() const { return dimension_; }                  // D

  ComplexMatrix materialize_k() const;  // D x s block matrix

 private:
  std::vector<std::size_t> levels_;
  std::vector<std::size_t> indices_;
  std::size_t dimension_ = 0;
};

// Information matrix M = sum_i w_i phi(g_i) phi*(g_i). The default entry
// point parallelizes the accumulation over design points with OpenMP; the
// _serial variant is the reference implementation kept for testing.
ComplexMatrix information_matrix(const Design& d, const Model& model);
ComplexMatrix information_matrix_serial(const Design& d, const Model& model);

// range(K) subset of range(M), decided by comparing rank(M M* + K K*)
// against rank(M) at the shared relative tolerance.
bool is_feasible(const ComplexMatrix& m, const SelectionSet& sel, double tol = kRankTol);

// C_K(M) = (K* M^+ K)^{-1}, an s x s Hermitian positive definite matrix;
// independent of the choice of generalized inverse under feasibility.
// Throws InfeasibleError when the range inclusion fails.
ComplexMatrix c_matrix(const ComplexMatrix& m, const SelectionSet& sel, double tol = kRankTol);

// Eigenvalues of C_K(M), ascending; sweeping a criterion over many p
// values should compute these once and use trace_power_from_eigenvalues.
std::vector<double> c_spectrum(const ComplexMatrix& m, const SelectionSet& sel,
                               double tol = kRankTol);

// Kiefer's criterion applied to C_K; p in [-inf, 1). Larger is better.
double phi_p(const Design& d, const Model& model, const SelectionSet& sel, double p);
double phi_p_from_info(const ComplexMatrix& m, const SelectionSet& sel, double p);

// Sum of the s smallest eigenvalues of M (selection-free).
double phi_es(const Design& d, const Model& model, std::size_t s);
double phi_es_from_info(const ComplexMatrix& m, std::size_t s);

// Criterion value of the ideal reference (M = I_D): s^(1/p) for finite
// p != 0, and 1 at p = 0 and p = -inf.
double phi_p_ideal(std::size_t s, double p);

struct EfficiencyResult {
  double value = 0.0;
  bool feasible = true;
};

// phi(d) / phi(ref); an infeasible d reports value 0 with feasible=false,
// an infeasible reference throws.
EfficiencyResult efficiency_phi_p(const Design& d, const Design& ref, const Model& model,
                                  const SelectionSet& sel, double p);
EfficiencyResult efficiency_phi_p_from_info(const ComplexMatrix& md, const ComplexMatrix& mref,
                                            const SelectionSet& sel, double p);
EfficiencyResult efficiency_phi_es(const Design& d, const Design& ref, const Model& model,
                                   std::size_t s);

struct CertificateReport {
  double max_violation = 0.0;   // max over test points of LHS - RHS
  double max_abs_gap = 0.0;     // max |LHS - RHS|; 0 exactly at optimality
  std::size_t test_point_count = 0;
  std::string criterion;
};

// Pointwise optimality certificate for Phi_p:
//   phi*(g) M^- K C^{p+1} K* (M^-)* phi(g) <= tr(C^p)   for all g
// (finite p); for p = -inf the subgradient form with E = I_s/s:
//   phi* M^- K C (I/s) C K* (M^-)* phi <= lambda_min(C).
// Violations are measured over the supplied test points (typically Haar
// samples plus the design's own support). Sweep is OpenMP-parallel; the
// _serial variant is the testing reference.
CertificateReport equivalence_certificate(const Design& d, const Model& model,
                                          const SelectionSet& sel, double p,
                                          const Design& test_points);
CertificateReport equivalence_certificate_serial(const Design& d, const Model& model,
                                                 const SelectionSet& sel, double p,
                                                 const Design& test_points);

// Certificate for Phi_{E_s} with subgradient Gamma = K K*:
//   phi*(g) K K* phi(g) <= Phi_{E_s}(d)   for all g.
CertificateReport es_certificate(const Design& d, const Model& model, const SelectionSet& sel,
                                 const Design& test_points);

// Default certificate test points: 512 Haar samples plus the design's own
// support points.
Design certificate_test_points(const Design& d, std::uint64_t seed = 2024,
                               std::size_t haar_count = 512);

struct LambdaReport {
  double max_residual = 0.0;
  std::vector<double> per_level;  // levels 1..max, |mean over points|
  bool passed = false;            // max_residual <= 1e-8
};

// Quadrature-exactness check: an equal-weight point set integrates every
// non-constant eigenfunction up to the model's truncation to zero.
// Throws PreconditionError if the design is weighted.
LambdaReport verify_lambda(const Design& d, const Model& model_at_max_level);
LambdaReport verify_lambda_serial(const Design& d, const Model& model_at_max_level);
LambdaReport verify_lambda(const Design& d, const std::vector<int>& max_level);

enum class StrengthMode { General, ClebschGordan };

// Design strength sufficient for exactness of all products of two model
// eigenfunctions, hence for M(mu_S) = I_D.
struct StrengthRequirement {
  // General mode: the universal product bound; levels hold the largest
  // level whose eigenvalue stays within 14 lambda_d (and within the sharp
  // (8 + 4 sqrt 2) lambda_d for tight_levels).
  // Clebsch-Gordan mode: per-factor frequency/level doubling; both level
  // sets coincide and lambda carries the doubled eigenvalue.
  std::vector<int> levels;
  std::vector<int> tight_levels;
  double lambda = 0.0;        // 14 lambda_d (general) / doubled eigenvalue (CG)
  double tight_lambda = 0.0;  // (8 + 4 sqrt 2) lambda_d (general) / same as lambda (CG)
};

StrengthRequirement required_strength(const Model& model, StrengthMode mode);

// Caratheodory support-size bounds: s <= s* <= s(s+1)/2 + s(D-s).
std::pair<std::int64_t, std::int64_t> caratheodory_bounds(std::int64_t dimension, std::int64_t s);

}  // namespace groupdesign
