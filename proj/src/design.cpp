#include "groupdesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "groupdesign/errors.hpp"
#include "groupdesign/rotation.hpp"

namespace groupdesign {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDuplicateTol = 1e-9;
}  // namespace

Design::Design(ManifoldId manifold, std::vector<Coord> points, std::vector<double> weights)
    : manifold_(manifold) {
  if (points.empty()) throw DomainError("design needs at least one point");
  if (points.size() != weights.size())
    throw DomainError("design: point and weight counts differ");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("design weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw DomainError("design weights must sum to 1");

  for (auto& p : points) canonicalize_point(manifold_, p);

  // Merge duplicates by weight addition.
  std::vector<Coord> merged;
  std::vector<double> merged_w;
  merged.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < merged.size(); ++j) {
      if (point_distance(manifold_, points[i], merged[j]) <= kDuplicateTol) {
        merged_w[j] += weights[i];
        found = true;
        break;
      }
    }
    if (!found) {
      merged.push_back(std::move(points[i]));
      merged_w.push_back(weights[i]);
    }
  }
  double norm = 0.0;
  for (double w : merged_w) norm += w;
  for (double& w : merged_w) w /= norm;
  points_ = std::move(merged);
  weights_ = std::move(merged_w);
}

Design::Design(ManifoldId manifold, std::vector<Coord> points, std::vector<double> weights,
               NoMergeTag)
    : manifold_(manifold), points_(std::move(points)), weights_(std::move(weights)) {
  for (auto& p : points_) canonicalize_point(manifold_, p);
  double norm = 0.0;
  for (double w : weights_) norm += w;
  for (double& w : weights_) w /= norm;
}

Design Design::equal_weight(ManifoldId manifold, std::vector<Coord> points) {
  const std::size_t n = points.size();
  if (n == 0) throw DomainError("design needs at least one point");
  return Design(manifold, std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool Design::has_equal_weights(double tol) const {
  const double w0 = 1.0 / static_cast<double>(points_.size());
  for (double w : weights_)
    if (std::abs(w - w0) > tol) return false;
  return true;
}

Design circle_design(int n_points) {
  if (n_points < 1) throw DomainError("circle_design: need at least one point");
  std::vector<Coord> pts;
  pts.reserve(n_points);
  for (int s = 1; s <= n_points; ++s)
    pts.push_back({static_cast<double>(s) / static_cast<double>(n_points)});
  return Design::equal_weight({Manifold::Circle, 1}, std::move(pts));
}

Design torus_grid(const std::vector<int>& counts) {
  if (counts.empty()) throw DomainError("torus_grid: need at least one axis");
  for (int c : counts)
    if (c < 1) throw DomainError("torus_grid: counts must be >= 1");
  std::size_t total = 1;
  for (int c : counts) total *= static_cast<std::size_t>(c);
  std::vector<Coord> pts;
  pts.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    Coord p(counts.size());
    std::size_t rest = t;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const int s = static_cast<int>(rest % counts[i]) + 1;
      rest /= counts[i];
      p[i] = static_cast<double>(s) / counts[i];
    }
    pts.push_back(std::move(p));
  }
  return Design::equal_weight({Manifold::Torus, static_cast<int>(counts.size())}, std::move(pts));
}

Design mimura_tight_2design() {
  std::vector<Coord> pts;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 1; k <= 5; ++k) {
    const double a1 = kTwoPi * k / 5.0;
    const double a2 = 2.0 * a1;
    pts.push_back({inv_sqrt2 * std::cos(a1), inv_sqrt2 * std::sin(a1), inv_sqrt2 * std::cos(a2),
                   inv_sqrt2 * std::sin(a2)});
  }
  return Design::equal_weight({Manifold::Sphere3, 1}, std::move(pts));
}

const char* to_string(AngleConvention c) {
  switch (c) {
    case AngleConvention::Endpoints: return "endpoints";
    case AngleConvention::Midpoint: return "midpoint";
    case AngleConvention::LeftOpen: return "leftOpen";
    case AngleConvention::CosEndpoints: return "cosEndpoints";
  }
  return "?";
}

AngleConvention angle_convention_from_string(const std::string& s) {
  if (s == "endpoints") return AngleConvention::Endpoints;
  if (s == "midpoint") return AngleConvention::Midpoint;
  if (s == "leftOpen" || s == "leftopen") return AngleConvention::LeftOpen;
  if (s == "cosEndpoints" || s == "cosendpoints") return AngleConvention::CosEndpoints;
  throw DomainError("unknown angle convention: " + s);
}

namespace {

std::vector<double> colatitude_nodes(int n, AngleConvention conv) {
  if (n < 1) throw DomainError("grid counts must be >= 1");
  std::vector<double> beta(n);
  if (n == 1) {
    switch (conv) {
      case AngleConvention::Endpoints:
      case AngleConvention::LeftOpen: beta[0] = 0.0; break;
      case AngleConvention::Midpoint:
      case AngleConvention::CosEndpoints: beta[0] = 0.5 * kPi; break;
    }
    return beta;
  }
  for (int j = 0; j < n; ++j) {
    switch (conv) {
      case AngleConvention::Endpoints:
        beta[j] = kPi * j / (n - 1.0);
        break;
      case AngleConvention::Midpoint:
        beta[j] = kPi * (j + 0.5) / n;
        break;
      case AngleConvention::LeftOpen:
        beta[j] = kPi * j / n;
        break;
      case AngleConvention::CosEndpoints:
        beta[j] = std::acos(std::clamp(-1.0 + 2.0 * j / (n - 1.0), -1.0, 1.0));
        break;
    }
  }
  return beta;
}

}  // namespace

Design euler_grid(int n_alpha, int n_beta, int n_gamma, AngleConvention beta_convention) {
  if (n_alpha < 1 || n_beta < 1 || n_gamma < 1)
    throw DomainError("euler_grid: counts must be >= 1");
  const std::vector<double> betas = colatitude_nodes(n_beta, beta_convention);
  std::vector<Coord> pts;
  pts.reserve(static_cast<std::size_t>(n_alpha) * n_beta * n_gamma);
  for (int i = 0; i < n_alpha; ++i)
    for (int j = 0; j < n_beta; ++j)
      for (int k = 0; k < n_gamma; ++k)
        pts.push_back({kTwoPi * i / n_alpha, betas[j], kTwoPi * k / n_gamma});
  return Design::equal_weight({Manifold::SO3, 1}, std::move(pts));
}

Design sphere2_grid(int n_theta, int n_phi, AngleConvention theta_convention) {
  if (n_theta < 1 || n_phi < 1) throw DomainError("sphere2_grid: counts must be >= 1");
  const std::vector<double> thetas = colatitude_nodes(n_theta, theta_convention);
  std::vector<Coord> pts;
  pts.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double st = std::sin(thetas[i]), ct = std::cos(thetas[i]);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = kTwoPi * j / n_phi;
      pts.push_back({st * std::cos(phi), st * std::sin(phi), ct});
    }
  }
  return Design::equal_weight({Manifold::Sphere2, 1}, std::move(pts));
}

Design product_design(const Design& s2_part, const Design& so3_part) {
  if (s2_part.manifold().kind != Manifold::Sphere2 || so3_part.manifold().kind != Manifold::SO3)
    throw DomainError("product_design: expected a Sphere2 design and an SO3 design");
  std::vector<Coord> pts;
  std::vector<double> w;
  pts.reserve(s2_part.size() * so3_part.size());
  w.reserve(s2_part.size() * so3_part.size());
  for (std::size_t i = 0; i < s2_part.size(); ++i) {
    for (std::size_t j = 0; j < so3_part.size(); ++j) {
      Coord p = s2_part.point(i);
      const Coord& e = so3_part.point(j);
      p.insert(p.end(), e.begin(), e.end());
      pts.push_back(std::move(p));
      w.push_back(s2_part.weight(i) * so3_part.weight(j));
    }
  }
  // Factor points are already distinct, so pairs are distinct.
  return Design({Manifold::Sphere2xSO3, 1}, std::move(pts), std::move(w), Design::NoMergeTag{});
}

namespace {

std::array<double, 4> random_unit_4vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<double, 4> q{};
  double norm = 0.0;
  do {
    for (auto& x : q) x = gauss(rng);
    norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  } while (norm < 1e-12);
  for (auto& x : q) x /= norm;
  return q;
}

Coord random_sphere2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double x, y, z, norm;
  do {
    x = gauss(rng);
    y = gauss(rng);
    z = gauss(rng);
    norm = std::sqrt(x * x + y * y + z * z);
  } while (norm < 1e-12);
  return {x / norm, y / norm, z / norm};
}

Coord random_so3(std::mt19937_64& rng) {
  const auto q = random_unit_4vector(rng);
  const Rotation r = rotation_from_quaternion(q);
  const auto e = euler_from_rotation(r);
  return {e[0], e[1], e[2]};
}

}  // namespace

Design haar_sample(const ManifoldId& manifold, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("haar_sample: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Coord> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    switch (manifold.kind) {
      case Manifold::Circle:
        pts.push_back({wrap_unit_interval(unif(rng))});
        break;
      case Manifold::Torus: {
        Coord p(manifold.torus_dim);
        for (auto& x : p) x = wrap_unit_interval(unif(rng));
        pts.push_back(std::move(p));
        break;
      }
      case Manifold::Sphere2:
        pts.push_back(random_sphere2(rng));
        break;
      case Manifold::Sphere3: {
        const auto q = random_unit_4vector(rng);
        pts.push_back({q[0], q[1], q[2], q[3]});
        break;
      }
      case Manifold::SO3:
        pts.push_back(random_so3(rng));
        break;
      case Manifold::Sphere2xSO3: {
        Coord p = random_sphere2(rng);
        const Coord e = random_so3(rng);
        p.insert(p.end(), e.begin(), e.end());
        pts.push_back(std::move(p));
        break;
      }
    }
  }
  // Random points collide with probability zero; skip the quadratic merge.
  const double w = 1.0 / static_cast<double>(count);
  return Design(manifold, std::move(pts), std::vector<double>(count, w), Design::NoMergeTag{});
}

Design project_su2_to_so3(const Design& s3_design, double dedup_tol) {
  if (s3_design.manifold().kind != Manifold::Sphere3)
    throw DomainError("project_su2_to_so3: input must live on Sphere3");
  std::vector<Rotation> rots;
  std::vector<double> w;
  for (std::size_t i = 0; i < s3_design.size(); ++i) {
    const Coord& q = s3_design.point(i);
    const Rotation r = rotation_from_quaternion({q[0], q[1], q[2], q[3]});
    bool found = false;
    for (std::size_t j = 0; j < rots.size(); ++j) {
      if (rotation_distance(r, rots[j]) <= dedup_tol) {
        w[j] += s3_design.weight(i);
        found = true;
        break;
      }
    }
    if (!found) {
      rots.push_back(r);
      w.push_back(s3_design.weight(i));
    }
  }
  std::vector<Coord> pts;
  pts.reserve(rots.size());
  for (const auto& r : rots) {
    const auto e = euler_from_rotation(r);
    pts.push_back({e[0], e[1], e[2]});
  }
  return Design({Manifold::SO3, 1}, std::move(pts), std::move(w));
}

}  // namespace groupdesign
