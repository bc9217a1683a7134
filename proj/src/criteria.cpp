#include "groupdesign/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "groupdesign/errors.hpp"

namespace groupdesign {

namespace {
using cx = cxdouble;
}

SelectionSet::SelectionSet(const Model& model, std::vector<std::size_t> levels)
    : levels_(std::move(levels)), dimension_(model.dimension()) {
  if (levels_.empty()) throw DomainError("selection set needs at least one level");
  std::sort(levels_.begin(), levels_.end());
  if (std::adjacent_find(levels_.begin(), levels_.end()) != levels_.end())
    throw DomainError("selection levels must be distinct");
  if (levels_.back() >= model.num_levels())
    throw DomainError("selection level beyond the model truncation");
  for (std::size_t lv : levels_) {
    const LevelInfo& info = model.levels()[lv];
    for (std::size_t i = 0; i < info.multiplicity; ++i) indices_.push_back(info.offset + i);
  }
}

SelectionSet SelectionSet::full(const Model& model) {
  std::vector<std::size_t> all(model.num_levels());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return SelectionSet(model, std::move(all));
}

ComplexMatrix SelectionSet::materialize_k() const {
  ComplexMatrix k(dimension_, indices_.size());
  for (std::size_t col = 0; col < indices_.size(); ++col) k(indices_[col], col) = 1.0;
  return k;
}

namespace {

// Rank-1 accumulation of the upper triangle: M += w phi phi*.
void accumulate_outer(const cx* phi, double w, std::size_t d, cx* m) {
  for (std::size_t i = 0; i < d; ++i) {
    const cx wphi = w * phi[i];
    cx* row = m + i * d;
    for (std::size_t j = i; j < d; ++j) row[j] += wphi * std::conj(phi[j]);
  }
}

void mirror_lower(ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
}

}  // namespace

ComplexMatrix information_matrix_serial(const Design& d, const Model& model) {
  if (!(d.manifold() == model.manifold()))
    throw DomainError("information_matrix: design and model live on different manifolds");
  const std::size_t dim = model.dimension();
  ComplexMatrix m(dim, dim);
  std::vector<cx> phi(dim);
  for (std::size_t i = 0; i < d.size(); ++i) {
    model.basis_into(d.point(i), phi.data());
    accumulate_outer(phi.data(), d.weight(i), dim, m.data());
  }
  mirror_lower(m);
  return m;
}

ComplexMatrix information_matrix(const Design& d, const Model& model) {
  if (!(d.manifold() == model.manifold()))
    throw DomainError("information_matrix: design and model live on different manifolds");
  const std::size_t dim = model.dimension();
  const std::size_t n = d.size();
  ComplexMatrix m(dim, dim);
#ifdef _OPENMP
  // Per-thread partials merged in thread order: with a static schedule the
  // result is bitwise reproducible for a fixed thread count.
  const int nthreads = omp_get_max_threads();
  std::vector<std::vector<cx>> partials(nthreads);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<cx>& local = partials[omp_get_thread_num()];
    local.assign(dim * dim, cx(0.0));
    std::vector<cx> phi(dim);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      model.basis_into(d.point(i), phi.data());
      accumulate_outer(phi.data(), d.weight(i), dim, local.data());
    }
  }
  for (const auto& local : partials) {
    if (local.empty()) continue;
    cx* out = m.data();
    for (std::size_t t = 0; t < local.size(); ++t) out[t] += local[t];
  }
#else
  std::vector<cx> phi(dim);
  for (std::size_t i = 0; i < n; ++i) {
    model.basis_into(d.point(i), phi.data());
    accumulate_outer(phi.data(), d.weight(i), dim, m.data());
  }
#endif
  mirror_lower(m);
  return m;
}

bool is_feasible(const ComplexMatrix& m, const SelectionSet& sel, double tol) {
  if (m.rows() != sel.dimension())
    throw ShapeError("is_feasible: matrix does not match the selection dimension");
  // range(M M* + K K*) = range(M) + range(K)
  ComplexMatrix g = m * m.adjoint();
  for (std::size_t idx : sel.indices()) g(idx, idx) += 1.0;
  return rank_psd(g, tol) == rank_psd(m, tol);
}

ComplexMatrix c_matrix(const ComplexMatrix& m, const SelectionSet& sel, double tol) {
  if (!is_feasible(m, sel, tol))
    throw InfeasibleError("selected coefficient blocks are not estimable under this design");
  const ComplexMatrix minv = pinv(m, tol);
  const auto& idx = sel.indices();
  const std::size_t s = idx.size();
  ComplexMatrix b(s, s);  // K* M^+ K
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) b(i, j) = minv(idx[i], idx[j]);
  // Invert the Hermitian positive definite block via its eigensystem.
  const HermitianEig e = herm_eig(b);
  const double kmax = e.eigenvalues.back();
  if (kmax <= 0.0)
    throw InfeasibleError("c_matrix: selected block of the pseudo-inverse is singular");
  for (double k : e.eigenvalues)
    if (k <= 1e-12 * kmax)
      throw InfeasibleError("c_matrix: selected block of the pseudo-inverse is singular");
  ComplexMatrix c(s, s);
  const ComplexMatrix& v = e.eigenvectors;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      cx acc = 0.0;
      for (std::size_t k = 0; k < s; ++k)
        acc += v(i, k) * (1.0 / e.eigenvalues[k]) * std::conj(v(j, k));
      c(i, j) = acc;
      if (j > i) c(j, i) = std::conj(acc);
    }
  return c;
}

std::vector<double> c_spectrum(const ComplexMatrix& m, const SelectionSet& sel, double tol) {
  return herm_eig(c_matrix(m, sel, tol)).eigenvalues;
}

double phi_p_from_info(const ComplexMatrix& m, const SelectionSet& sel, double p) {
  return trace_power_from_eigenvalues(c_spectrum(m, sel, kRankTol), p);
}

double phi_p(const Design& d, const Model& model, const SelectionSet& sel, double p) {
  return phi_p_from_info(information_matrix(d, model), sel, p);
}

double phi_es_from_info(const ComplexMatrix& m, std::size_t s) {
  if (s < 1 || s > m.rows()) throw DomainError("phi_es: s must be in 1..D");
  const HermitianEig e = herm_eig(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < s; ++i) sum += e.eigenvalues[i];
  return sum;
}

double phi_es(const Design& d, const Model& model, std::size_t s) {
  return phi_es_from_info(information_matrix(d, model), s);
}

double phi_p_ideal(std::size_t s, double p) {
  if (p >= 1.0) throw DomainError("phi_p: p must be < 1");
  if (std::isinf(p) || std::abs(p) < 1e-9) return 1.0;
  return std::pow(static_cast<double>(s), 1.0 / p);
}

EfficiencyResult efficiency_phi_p_from_info(const ComplexMatrix& md, const ComplexMatrix& mref,
                                            const SelectionSet& sel, double p) {
  double ref;
  try {
    ref = phi_p_from_info(mref, sel, p);
  } catch (const InfeasibleError&) {
    throw InfeasibleError("efficiency: reference design is infeasible");
  }
  try {
    return {phi_p_from_info(md, sel, p) / ref, true};
  } catch (const InfeasibleError&) {
    return {0.0, false};
  }
}

EfficiencyResult efficiency_phi_p(const Design& d, const Design& ref, const Model& model,
                                  const SelectionSet& sel, double p) {
  return efficiency_phi_p_from_info(information_matrix(d, model),
                                    information_matrix(ref, model), sel, p);
}

EfficiencyResult efficiency_phi_es(const Design& d, const Design& ref, const Model& model,
                                   std::size_t s) {
  const double r = phi_es(ref, model, s);
  if (r <= 0.0) throw InfeasibleError("efficiency: reference Phi_Es value is zero");
  return {phi_es(d, model, s) / r, true};
}

CertificateReport equivalence_certificate_serial(const Design& d, const Model& model,
                                                 const SelectionSet& sel, double p,
                                                 const Design& test_points) {
  if (test_points.size() == 0) throw DomainError("certificate needs test points");
  const ComplexMatrix m = information_matrix(d, model);
  const ComplexMatrix minv = pinv(m);
  const ComplexMatrix c = c_matrix(m, sel);
  const HermitianEig ce = herm_eig(c);
  const std::size_t s = sel.size();
  const std::size_t dim = sel.dimension();
  const auto& idx = sel.indices();

  const double q = std::isinf(p) ? 2.0 : p + 1.0;
  double rhs;
  if (std::isinf(p)) {
    rhs = ce.eigenvalues.front();
  } else {
    rhs = 0.0;
    for (double k : ce.eigenvalues) rhs += std::pow(k, p);
  }
  const double scale = std::isinf(p) ? 1.0 / static_cast<double>(s) : 1.0;

  // LHS = y* C^q y (times scale) with y = K* M^+ phi; evaluate through the
  // eigensystem of C: LHS = scale * sum_k k^q |<v_k, y>|^2.
  ComplexMatrix sliced(s, dim);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < dim; ++j) sliced(i, j) = minv(idx[i], j);

  std::vector<cx> phi(dim), y(s);
  double max_violation = -std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  for (std::size_t t = 0; t < test_points.size(); ++t) {
    model.basis_into(test_points.point(t), phi.data());
    for (std::size_t i = 0; i < s; ++i) {
      cx acc = 0.0;
      const cx* row = sliced.data() + i * dim;
      for (std::size_t j = 0; j < dim; ++j) acc += row[j] * phi[j];
      y[i] = acc;
    }
    double lhs = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
      cx dot = 0.0;
      for (std::size_t i = 0; i < s; ++i) dot += std::conj(ce.eigenvectors(i, k)) * y[i];
      lhs += std::pow(ce.eigenvalues[k], q) * std::norm(dot);
    }
    lhs *= scale;
    max_violation = std::max(max_violation, lhs - rhs);
    max_gap = std::max(max_gap, std::abs(lhs - rhs));
  }
  return {max_violation, max_gap, test_points.size(),
          std::isinf(p) ? "phi_-inf" : "phi_p"};
}

CertificateReport equivalence_certificate(const Design& d, const Model& model,
                                          const SelectionSet& sel, double p,
                                          const Design& test_points) {
  if (test_points.size() == 0) throw DomainError("certificate needs test points");
  const ComplexMatrix m = information_matrix(d, model);
  const ComplexMatrix minv = pinv(m);
  const ComplexMatrix c = c_matrix(m, sel);
  const HermitianEig ce = herm_eig(c);
  const std::size_t s = sel.size();
  const std::size_t dim = sel.dimension();
  const auto& idx = sel.indices();

  const double q = std::isinf(p) ? 2.0 : p + 1.0;
  double rhs;
  if (std::isinf(p)) {
    rhs = ce.eigenvalues.front();
  } else {
    rhs = 0.0;
    for (double k : ce.eigenvalues) rhs += std::pow(k, p);
  }
  const double scale = std::isinf(p) ? 1.0 / static_cast<double>(s) : 1.0;

  ComplexMatrix sliced(s, dim);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < dim; ++j) sliced(i, j) = minv(idx[i], j);

  double max_violation = -std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<cx> phi(dim), y(s);
    double local_violation = -std::numeric_limits<double>::infinity();
    double local_gap = 0.0;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(test_points.size()); ++t) {
      model.basis_into(test_points.point(t), phi.data());
      for (std::size_t i = 0; i < s; ++i) {
        cx acc = 0.0;
        const cx* row = sliced.data() + i * dim;
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * phi[j];
        y[i] = acc;
      }
      double lhs = 0.0;
      for (std::size_t k = 0; k < s; ++k) {
        cx dot = 0.0;
        for (std::size_t i = 0; i < s; ++i) dot += std::conj(ce.eigenvectors(i, k)) * y[i];
        lhs += std::pow(ce.eigenvalues[k], q) * std::norm(dot);
      }
      lhs *= scale;
      local_violation = std::max(local_violation, lhs - rhs);
      local_gap = std::max(local_gap, std::abs(lhs - rhs));
    }
#pragma omp critical(groupdesign_certificate)
    {
      max_violation = std::max(max_violation, local_violation);
      max_gap = std::max(max_gap, local_gap);
    }
  }
#else
  const CertificateReport serial = equivalence_certificate_serial(d, model, sel, p, test_points);
  max_violation = serial.max_violation;
  max_gap = serial.max_abs_gap;
#endif
  return {max_violation, max_gap, test_points.size(),
          std::isinf(p) ? "phi_-inf" : "phi_p"};
}

CertificateReport es_certificate(const Design& d, const Model& model, const SelectionSet& sel,
                                 const Design& test_points) {
  if (test_points.size() == 0) throw DomainError("certificate needs test points");
  const ComplexMatrix m = information_matrix(d, model);
  const double rhs = phi_es_from_info(m, sel.size());
  const auto& idx = sel.indices();
  const std::size_t dim = sel.dimension();

  double max_violation = -std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<cx> phi(dim);
    double local_violation = -std::numeric_limits<double>::infinity();
    double local_gap = 0.0;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(test_points.size()); ++t) {
      model.basis_into(test_points.point(t), phi.data());
      double lhs = 0.0;
      for (std::size_t i : idx) lhs += std::norm(phi[i]);
      local_violation = std::max(local_violation, lhs - rhs);
      local_gap = std::max(local_gap, std::abs(lhs - rhs));
    }
#pragma omp critical(groupdesign_es_certificate)
    {
      max_violation = std::max(max_violation, local_violation);
      max_gap = std::max(max_gap, local_gap);
    }
  }
#else
  std::vector<cx> phi(dim);
  for (std::size_t t = 0; t < test_points.size(); ++t) {
    model.basis_into(test_points.point(t), phi.data());
    double lhs = 0.0;
    for (std::size_t i : idx) lhs += std::norm(phi[i]);
    max_violation = std::max(max_violation, lhs - rhs);
    max_gap = std::max(max_gap, std::abs(lhs - rhs));
  }
#endif
  return {max_violation, max_gap, test_points.size(), "phi_Es"};
}

Design certificate_test_points(const Design& d, std::uint64_t seed, std::size_t haar_count) {
  const Design haar = haar_sample(d.manifold(), haar_count, seed);
  std::vector<Coord> pts = haar.points();
  pts.insert(pts.end(), d.points().begin(), d.points().end());
  return Design::equal_weight(d.manifold(), std::move(pts));
}

LambdaReport verify_lambda_serial(const Design& d, const Model& model) {
  if (!(d.manifold() == model.manifold()))
    throw DomainError("verify_lambda: design and model live on different manifolds");
  if (!d.has_equal_weights())
    throw PreconditionError("verify_lambda: design must have equal weights");
  const std::size_t dim = model.dimension();
  std::vector<cx> mean(dim, cx(0.0)), phi(dim);
  for (std::size_t i = 0; i < d.size(); ++i) {
    model.basis_into(d.point(i), phi.data());
    for (std::size_t j = 0; j < dim; ++j) mean[j] += phi[j];
  }
  for (auto& z : mean) z /= static_cast<double>(d.size());

  LambdaReport rep;
  for (std::size_t lv = 1; lv < model.num_levels(); ++lv) {
    const LevelInfo& info = model.levels()[lv];
    double worst = 0.0;
    for (std::size_t j = 0; j < info.multiplicity; ++j)
      worst = std::max(worst, std::abs(mean[info.offset + j]));
    rep.per_level.push_back(worst);
    rep.max_residual = std::max(rep.max_residual, worst);
  }
  rep.passed = rep.max_residual <= 1e-8;
  return rep;
}

LambdaReport verify_lambda(const Design& d, const Model& model) {
  if (!(d.manifold() == model.manifold()))
    throw DomainError("verify_lambda: design and model live on different manifolds");
  if (!d.has_equal_weights())
    throw PreconditionError("verify_lambda: design must have equal weights");
  const std::size_t dim = model.dimension();
  std::vector<cx> mean(dim, cx(0.0));
#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
  std::vector<std::vector<cx>> partials(nthreads);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<cx>& local = partials[omp_get_thread_num()];
    local.assign(dim, cx(0.0));
    std::vector<cx> phi(dim);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(d.size()); ++i) {
      model.basis_into(d.point(i), phi.data());
      for (std::size_t j = 0; j < dim; ++j) local[j] += phi[j];
    }
  }
  for (const auto& local : partials)
    for (std::size_t j = 0; j < local.size(); ++j) mean[j] += local[j];
#else
  std::vector<cx> phi(dim);
  for (std::size_t i = 0; i < d.size(); ++i) {
    model.basis_into(d.point(i), phi.data());
    for (std::size_t j = 0; j < dim; ++j) mean[j] += phi[j];
  }
#endif
  for (auto& z : mean) z /= static_cast<double>(d.size());

  LambdaReport rep;
  for (std::size_t lv = 1; lv < model.num_levels(); ++lv) {
    const LevelInfo& info = model.levels()[lv];
    double worst = 0.0;
    for (std::size_t j = 0; j < info.multiplicity; ++j)
      worst = std::max(worst, std::abs(mean[info.offset + j]));
    rep.per_level.push_back(worst);
    rep.max_residual = std::max(rep.max_residual, worst);
  }
  rep.passed = rep.max_residual <= 1e-8;
  return rep;
}

LambdaReport verify_lambda(const Design& d, const std::vector<int>& max_level) {
  return verify_lambda(d, Model::make(d.manifold(), max_level));
}

namespace {

// Largest level of the manifold's (unbounded) eigenvalue ladder whose
// eigenvalue does not exceed the bound; exactness at that level already
// covers everything up to the bound.
int last_level_within(Manifold kind, double bound) {
  auto eig = [kind](int k) -> double {
    switch (kind) {
      case Manifold::Circle: {
        const double w = 2.0 * std::numbers::pi * k;
        return w * w;
      }
      case Manifold::Sphere2: return static_cast<double>(k) * (k + 1);
      case Manifold::Sphere3:
      case Manifold::SO3: return static_cast<double>(k) * (k + 2);
      default: return 0.0;
    }
  };
  int k = 0;
  while (eig(k + 1) <= bound) ++k;
  return k;
}

}  // namespace

StrengthRequirement required_strength(const Model& model, StrengthMode mode) {
  StrengthRequirement req;
  const auto& levels = model.levels();
  const ManifoldId& m = model.manifold();
  const std::vector<int> trunc = model.truncation();

  if (mode == StrengthMode::ClebschGordan) {
    // Products of two basis functions stay within the per-factor doubled
    // truncation; this is the sharp catalog-specific requirement.
    switch (m.kind) {
      case Manifold::Circle:
      case Manifold::Torus: {
        for (int n : trunc) req.levels.push_back(2 * n);
        req.lambda = 4.0 * levels.back().eigenvalue;
        break;
      }
      case Manifold::Sphere2: {
        const int l = 2 * trunc[0];
        req.levels = {l};
        req.lambda = static_cast<double>(l) * (l + 1);
        break;
      }
      case Manifold::Sphere3: {
        const int l = 2 * trunc[0];
        req.levels = {l};
        req.lambda = static_cast<double>(l) * (l + 2);
        break;
      }
      case Manifold::SO3: {
        // Level 2L downstairs, reached through level 4L on the double cover.
        const int l = 2 * trunc[0];
        req.levels = {l};
        req.lambda = static_cast<double>(l) * (l + 2);
        break;
      }
      case Manifold::Sphere2xSO3: {
        req.levels = {2 * trunc[0], 2 * trunc[1]};
        const int a = 2 * trunc[0], b = 2 * trunc[1];
        req.lambda = static_cast<double>(a) * (a + 1) * b * (b + 1);
        break;
      }
    }
    req.tight_levels = req.levels;
    req.tight_lambda = req.lambda;
    return req;
  }

  const double sharp_factor = 8.0 + 4.0 * std::sqrt(2.0);
  switch (m.kind) {
    case Manifold::Circle: {
      const double lam_d = levels.back().eigenvalue;
      req.lambda = 14.0 * lam_d;
      req.tight_lambda = sharp_factor * lam_d;
      req.levels = {last_level_within(Manifold::Circle, req.lambda)};
      req.tight_levels = {last_level_within(Manifold::Circle, req.tight_lambda)};
      break;
    }
    case Manifold::Torus: {
      // The torus level ladder depends on the frequency box; report the
      // eigenvalue thresholds only.
      const double lam_d = levels.back().eigenvalue;
      req.lambda = 14.0 * lam_d;
      req.tight_lambda = sharp_factor * lam_d;
      break;
    }
    case Manifold::Sphere2:
    case Manifold::Sphere3:
    case Manifold::SO3: {
      const double lam_d = levels.back().eigenvalue;
      req.lambda = 14.0 * lam_d;
      req.tight_lambda = sharp_factor * lam_d;
      req.levels = {last_level_within(m.kind, req.lambda)};
      req.tight_levels = {last_level_within(m.kind, req.tight_lambda)};
      break;
    }
    case Manifold::Sphere2xSO3: {
      // Degenerate product spectrum; apply the bound per factor.
      const double lam1 = static_cast<double>(trunc[0]) * (trunc[0] + 1);
      const double lam2 = static_cast<double>(trunc[1]) * (trunc[1] + 2);
      req.lambda = 14.0 * std::max(lam1, lam2);
      req.tight_lambda = sharp_factor * std::max(lam1, lam2);
      req.levels = {last_level_within(Manifold::Sphere2, 14.0 * lam1),
                    last_level_within(Manifold::SO3, 14.0 * lam2)};
      req.tight_levels = {last_level_within(Manifold::Sphere2, sharp_factor * lam1),
                          last_level_within(Manifold::SO3, sharp_factor * lam2)};
      break;
    }
  }
  return req;
}

std::pair<std::int64_t, std::int64_t> caratheodory_bounds(std::int64_t dimension, std::int64_t s) {
  if (s < 1 || s > dimension) throw DomainError("caratheodory_bounds: requires 1 <= s <= D");
  const std::int64_t upper = s * (s + 1) / 2 + s * (dimension - s);
  return {s, upper};
}

}  // namespace groupdesign
