#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace groupdesign {

enum class Manifold { Circle, Torus, Sphere2, Sphere3, SO3, Sphere2xSO3 };

// Manifold identity; the torus additionally carries its dimension.
struct ManifoldId {
  Manifold kind = Manifold::Circle;
  int torus_dim = 1;

  bool operator==(const ManifoldId& o) const {
    return kind == o.kind && (kind != Manifold::Torus || torus_dim == o.torus_dim);
  }
};

std::string to_string(const ManifoldId& m);
ManifoldId manifold_from_string(const std::string& name, int torus_dim = 1);

// Stored coordinates per manifold:
//   Circle       x in (0,1]                                  (1 value)
//   Torus        x_i in (0,1]                                (dim values)
//   Sphere2      unit 3-vector (x,y,z)                       (3 values)
//   Sphere3      unit 4-vector                               (4 values)
//   SO3          Euler angles (alpha, beta, gamma), z-y-z    (3 values)
//   Sphere2xSO3  unit 3-vector followed by Euler angles      (6 values)
// Sphere points are stored as unit vectors; angles are derived on demand
// (spherical t-design files ship as unit vectors, and text output must
// round-trip them exactly).
using Coord = std::vector<double>;

std::size_t coord_size(const ManifoldId& m);

// Wraps angles/coordinates into their canonical ranges, normalizes unit
// vectors, and collapses the Euler gimbal-lock redundancy (beta = 0 or pi
// leaves only alpha +/- gamma observable). Throws DomainError on wrong
// coordinate count or a vector further than 1e-6 from unit length.
void canonicalize_point(const ManifoldId& m, Coord& c);

// Distance used for duplicate detection: wrap-around per coordinate on
// tori, chordal distance on spheres, Frobenius distance of rotation
// matrices on SO(3), max of the parts on the product.
double point_distance(const ManifoldId& m, const Coord& a, const Coord& b);

double wrap_unit_interval(double x);   // into (0,1]
double wrap_angle_2pi(double x);       // into [0, 2pi)

}  // namespace groupdesign
