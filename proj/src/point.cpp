#include "groupdesign/point.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groupdesign/errors.hpp"
#include "groupdesign/rotation.hpp"

namespace groupdesign {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGimbalTol = 1e-12;
}  // namespace

std::string to_string(const ManifoldId& m) {
  switch (m.kind) {
    case Manifold::Circle: return "circle";
    case Manifold::Torus: return "torus" + std::to_string(m.torus_dim);
    case Manifold::Sphere2: return "s2";
    case Manifold::Sphere3: return "s3";
    case Manifold::SO3: return "so3";
    case Manifold::Sphere2xSO3: return "s2xso3";
  }
  return "?";
}

ManifoldId manifold_from_string(const std::string& name, int torus_dim) {
  if (name == "circle" || name == "s1") return {Manifold::Circle, 1};
  if (name == "s2" || name == "sphere2") return {Manifold::Sphere2, 1};
  if (name == "s3" || name == "sphere3" || name == "su2") return {Manifold::Sphere3, 1};
  if (name == "so3") return {Manifold::SO3, 1};
  if (name == "s2xso3") return {Manifold::Sphere2xSO3, 1};
  if (name.rfind("torus", 0) == 0) {
    int dim = torus_dim;
    if (name.size() > 5) dim = std::stoi(name.substr(5));
    if (dim < 1) throw DomainError("torus dimension must be >= 1");
    return {Manifold::Torus, dim};
  }
  throw DomainError("unknown manifold name: " + name);
}

std::size_t coord_size(const ManifoldId& m) {
  switch (m.kind) {
    case Manifold::Circle: return 1;
    case Manifold::Torus: return static_cast<std::size_t>(m.torus_dim);
    case Manifold::Sphere2: return 3;
    case Manifold::Sphere3: return 4;
    case Manifold::SO3: return 3;
    case Manifold::Sphere2xSO3: return 6;
  }
  return 0;
}

double wrap_unit_interval(double x) {
  double y = x - std::floor(x);
  if (y <= 0.0) y = 1.0;  // 0 and 1 are the same point; (0,1] is canonical
  return y;
}

double wrap_angle_2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return y;
}

namespace {

void canonicalize_unit_vector(double* v, std::size_t n) {
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm2 += v[i] * v[i];
  const double norm = std::sqrt(norm2);
  if (std::abs(norm - 1.0) > 1e-6)
    throw DomainError("point is not on the unit sphere (|norm - 1| > 1e-6)");
  // Leave bit-exact data alone so text round trips stay exact.
  if (std::abs(norm - 1.0) > 1e-12) {
    for (std::size_t i = 0; i < n; ++i) v[i] /= norm;
  }
}

void canonicalize_euler(double* e) {
  double alpha = wrap_angle_2pi(e[0]);
  double beta = e[1];
  double gamma = wrap_angle_2pi(e[2]);
  if (beta < -1e-9 || beta > kPi + 1e-9)
    throw DomainError("Euler beta outside [0, pi]");
  beta = std::clamp(beta, 0.0, kPi);
  if (beta < kGimbalTol) {
    alpha = wrap_angle_2pi(alpha + gamma);
    beta = 0.0;
    gamma = 0.0;
  } else if (kPi - beta < kGimbalTol) {
    alpha = wrap_angle_2pi(alpha - gamma);
    beta = kPi;
    gamma = 0.0;
  }
  e[0] = alpha;
  e[1] = beta;
  e[2] = gamma;
}

double torus_coordinate_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

double euclidean_distance(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double euler_distance(const double* a, const double* b) {
  const Rotation ra = rotation_from_euler(a[0], a[1], a[2]);
  const Rotation rb = rotation_from_euler(b[0], b[1], b[2]);
  return rotation_distance(ra, rb);
}

}  // namespace

void canonicalize_point(const ManifoldId& m, Coord& c) {
  if (c.size() != coord_size(m))
    throw DomainError("point has " + std::to_string(c.size()) + " coordinates, expected " +
                      std::to_string(coord_size(m)) + " on " + to_string(m));
  switch (m.kind) {
    case Manifold::Circle:
    case Manifold::Torus:
      for (auto& x : c) x = wrap_unit_interval(x);
      break;
    case Manifold::Sphere2:
      canonicalize_unit_vector(c.data(), 3);
      break;
    case Manifold::Sphere3:
      canonicalize_unit_vector(c.data(), 4);
      break;
    case Manifold::SO3:
      canonicalize_euler(c.data());
      break;
    case Manifold::Sphere2xSO3:
      canonicalize_unit_vector(c.data(), 3);
      canonicalize_euler(c.data() + 3);
      break;
  }
}

double point_distance(const ManifoldId& m, const Coord& a, const Coord& b) {
  switch (m.kind) {
    case Manifold::Circle:
    case Manifold::Torus: {
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, torus_coordinate_distance(a[i], b[i]));
      return worst;
    }
    case Manifold::Sphere2:
      return euclidean_distance(a.data(), b.data(), 3);
    case Manifold::Sphere3:
      return euclidean_distance(a.data(), b.data(), 4);
    case Manifold::SO3:
      return euler_distance(a.data(), b.data());
    case Manifold::Sphere2xSO3:
      return std::max(euclidean_distance(a.data(), b.data(), 3),
                      euler_distance(a.data() + 3, b.data() + 3));
  }
  return 0.0;
}

}  // namespace groupdesign
