#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "groupdesign/complex_matrix.hpp"
#include "groupdesign/point.hpp"

namespace groupdesign {

// One eigenvalue level of the truncated regression basis.
struct LevelInfo {
  double eigenvalue = 0.0;
  std::size_t multiplicity = 0;
  std::size_t offset = 0;        // first basis index of this level
  std::array<int, 2> index{0, 0};  // level label: frequency/degree, or (l1,l2) pair
};

// A truncated Laplace-Beltrami eigenfunction basis on one of the catalog
// manifolds. Basis functions are orthonormal in L^2 of the probability
// Haar (resp. normalized volume) measure, ordered level by level:
//
//   Circle       e^{2 pi i k x}, levels |k| = 0..n, within a level +k, -k
//   Torus        e^{2 pi i <k,x>}, levels grouped by sum k_i^2 ascending,
//                frequency vectors lexicographic within a level
//   Sphere2      sqrt(4 pi) Y_l^m, m = -l..l
//   Sphere3      hyperspherical harmonics Y_{n;l,m}, l = 0..n, m = -l..l
//   SO3          sqrt(2l+1) D^l_{m,m'}, m outer, m' inner, each -l..l
//   Sphere2xSO3  products of the two factor bases; levels are the pairs
//                (l_s2, l_so3) in lexicographic order, S^2 index outer
//
// Eigenvalues: circle/torus (2 pi)^2 sum k_i^2, S^2 l(l+1), S^3 l(l+2),
// SO(3) l(l+2), product l1(l1+1) l2(l2+1).
class Model {
 public:
  static Model circle(int max_frequency);
  static Model torus(std::vector<int> max_frequencies);
  static Model sphere2(int max_level);
  static Model sphere3(int max_level);
  static Model so3(int max_level);
  static Model sphere2_x_so3(int level_s2, int level_so3);

  // Builds a model for the given manifold from a truncation vector in the
  // shape reported by truncation().
  static Model make(const ManifoldId& m, const std::vector<int>& truncation);

  const ManifoldId& manifold() const { return manifold_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t num_levels() const { return levels_.size(); }
  const std::vector<LevelInfo>& levels() const { return levels_; }

  double eigenvalue(std::size_t level) const;
  std::size_t multiplicity(std::size_t level) const;

  std::vector<int> truncation() const;

  // Evaluates the basis vector at a canonical point into out[0..D-1].
  void basis_into(const Coord& g, cxdouble* out) const;
  std::vector<cxdouble> basis(const Coord& g) const;

 private:
  Model() = default;

  ManifoldId manifold_;
  std::vector<int> trunc_;
  std::size_t dimension_ = 0;
  std::vector<LevelInfo> levels_;
  std::vector<std::vector<int>> torus_freqs_;  // canonical order, torus only
};

}  // namespace groupdesign
