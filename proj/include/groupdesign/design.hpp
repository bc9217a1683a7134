#pragma once

#include <cstdint>
#include <vector>

#include "groupdesign/point.hpp"

namespace groupdesign {

// A finitely supported probability measure on one of the catalog
// manifolds: distinct points with positive weights summing to 1.
// Construction canonicalizes every point, merges duplicates within
// tolerance 1e-9 by adding their weights, and renormalizes the total
// weight (inputs are required to sum to 1 within 1e-9 beforehand).
class Design {
 public:
  Design(ManifoldId manifold, std::vector<Coord> points, std::vector<double> weights);

  static Design equal_weight(ManifoldId manifold, std::vector<Coord> points);

  const ManifoldId& manifold() const { return manifold_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Coord>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  const Coord& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  bool has_equal_weights(double tol = 1e-12) const;

 private:
  struct NoMergeTag {};
  Design(ManifoldId manifold, std::vector<Coord> points, std::vector<double> weights, NoMergeTag);

  ManifoldId manifold_;
  std::vector<Coord> points_;
  std::vector<double> weights_;

  friend Design haar_sample(const ManifoldId&, std::size_t, std::uint64_t);
  friend Design product_design(const Design&, const Design&);
};

// Equally spaced points s/n, s = 1..n, with weights 1/n. Integrates all
// frequencies k with k not a multiple of n exactly to zero.
Design circle_design(int n_points);

// Product of circle designs, one per axis.
Design torus_grid(const std::vector<int>& counts);

// The five columns of the 4x5 matrix with rows c_1, s_1, c_2, s_2 where
// c_k + i s_k = (zeta^k, ..., zeta^{5k}) / sqrt(2), zeta = e^{2 pi i / 5}:
// a tight spherical 2-design on S^3.
Design mimura_tight_2design();

// Grid conventions for the colatitude-type angle (beta on SO(3), theta on
// S^2). Azimuthal angles are always sampled at 2 pi j / n, j = 0..n-1.
enum class AngleConvention {
  Endpoints,     // j pi / (n-1), includes both ends
  Midpoint,      // (j + 1/2) pi / n
  LeftOpen,      // j pi / n
  CosEndpoints,  // cos-equally-spaced: arccos(-1 + 2j/(n-1))
};
// Default calibrated against the published SO(3) grid efficiencies.
inline constexpr AngleConvention kDefaultAngleConvention = AngleConvention::CosEndpoints;

const char* to_string(AngleConvention c);
AngleConvention angle_convention_from_string(const std::string& s);

Design euler_grid(int n_alpha, int n_beta, int n_gamma,
                  AngleConvention beta_convention = kDefaultAngleConvention);

Design sphere2_grid(int n_theta, int n_phi,
                    AngleConvention theta_convention = kDefaultAngleConvention);

// Cartesian product with product weights; currently Sphere2 x SO3.
Design product_design(const Design& s2_part, const Design& so3_part);

// Pseudo-random points from the invariant measure; deterministic per seed.
Design haar_sample(const ManifoldId& manifold, std::size_t count, std::uint64_t seed);

// Image of an S^3 design under the double cover onto SO(3): rotations
// closer than dedup_tol in Frobenius distance are merged, weights added.
Design project_su2_to_so3(const Design& s3_design, double dedup_tol = 1e-8);

}  // namespace groupdesign
