#include "groupdesign/interval_design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "groupdesign/errors.hpp"

namespace groupdesign {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTargetResidual = 1e-10;

double binom_int(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double interval_weight_moment(int weight_exponent, int r) {
  if (weight_exponent != 1 && weight_exponent != 2)
    throw DomainError("interval weight exponent must be 1 or 2");
  if (r < 0) throw DomainError("moment order must be nonnegative");
  if (r % 2 == 1) return 0.0;
  const int k = r / 2;
  if (weight_exponent == 2) {
    // uniform weight on [-1,1]
    return 1.0 / (r + 1.0);
  }
  // semicircle weight sqrt(1-x^2): m_{2k} = C(2k,k) / ((k+1) 4^k)
  return binom_int(2 * k, k) / ((k + 1.0) * std::pow(4.0, k));
}

double interval_moment_residual(const IntervalDesign& d) {
  double worst = 0.0;
  for (int r = 1; r <= d.strength; ++r) {
    double mean = 0.0;
    for (double c : d.nodes) mean += std::pow(c, r);
    mean /= static_cast<double>(d.nodes.size());
    worst = std::max(worst, std::abs(mean - interval_weight_moment(d.weight_exponent, r)));
  }
  return worst;
}

namespace {

// Gauss-Newton step for the underdetermined system F_r(c) = mean(c^r) - m_r,
// r = 1..t: solve J J^T y = -F, step = J^T y (minimum-norm solution).
bool newton_step(const std::vector<double>& nodes, const std::vector<double>& f, int t,
                 std::vector<double>& step) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> jac(static_cast<std::size_t>(t) * n);
  for (int r = 1; r <= t; ++r)
    for (int j = 0; j < n; ++j)
      jac[(r - 1) * n + j] = r * std::pow(nodes[j], r - 1) / n;

  std::vector<double> g(static_cast<std::size_t>(t) * t);
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += jac[a * n + j] * jac[b * n + j];
      g[a * t + b] = s;
    }
  for (int a = 0; a < t; ++a) g[a * t + a] += 1e-14;  // guard against exact rank loss

  std::vector<double> rhs(t);
  for (int a = 0; a < t; ++a) rhs[a] = -f[a];

  // Gaussian elimination with partial pivoting on the t x t Gram matrix.
  for (int col = 0; col < t; ++col) {
    int piv = col;
    for (int rrow = col + 1; rrow < t; ++rrow)
      if (std::abs(g[rrow * t + col]) > std::abs(g[piv * t + col])) piv = rrow;
    if (std::abs(g[piv * t + col]) < 1e-300) return false;
    if (piv != col) {
      for (int c2 = 0; c2 < t; ++c2) std::swap(g[col * t + c2], g[piv * t + c2]);
      std::swap(rhs[col], rhs[piv]);
    }
    for (int rrow = col + 1; rrow < t; ++rrow) {
      const double factor = g[rrow * t + col] / g[col * t + col];
      for (int c2 = col; c2 < t; ++c2) g[rrow * t + c2] -= factor * g[col * t + c2];
      rhs[rrow] -= factor * rhs[col];
    }
  }
  std::vector<double> y(t);
  for (int rrow = t - 1; rrow >= 0; --rrow) {
    double s = rhs[rrow];
    for (int c2 = rrow + 1; c2 < t; ++c2) s -= g[rrow * t + c2] * y[c2];
    y[rrow] = s / g[rrow * t + rrow];
  }

  step.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < t; ++a) step[j] += jac[a * n + j] * y[a];
  return true;
}

void residual_vector(const std::vector<double>& nodes, int weight_exponent, int t,
                     std::vector<double>& f) {
  f.assign(t, 0.0);
  for (int r = 1; r <= t; ++r) {
    double mean = 0.0;
    for (double c : nodes) mean += std::pow(c, r);
    mean /= static_cast<double>(nodes.size());
    f[r - 1] = mean - interval_weight_moment(weight_exponent, r);
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool solve_from(std::vector<double> nodes, int weight_exponent, int t,
                std::vector<double>& out, double& final_residual) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> f, step;
  residual_vector(nodes, weight_exponent, t, f);
  double fn = norm2(f);
  for (int iter = 0; iter < 200 && fn > 1e-13; ++iter) {
    if (!newton_step(nodes, f, t, step)) break;
    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      std::vector<double> trial(n);
      for (int j = 0; j < n; ++j)
        trial[j] = std::clamp(nodes[j] + lambda * step[j], -1.0, 1.0);
      std::vector<double> ftrial;
      residual_vector(trial, weight_exponent, t, ftrial);
      const double fnt = norm2(ftrial);
      if (fnt < fn) {
        nodes = std::move(trial);
        f = std::move(ftrial);
        fn = fnt;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }
  std::sort(nodes.begin(), nodes.end());
  // Reject coincident nodes; the moment conditions want distinct ones.
  for (std::size_t j = 1; j < nodes.size(); ++j)
    if (nodes[j] - nodes[j - 1] < 1e-8) {
      final_residual = std::max(fn, 1.0);
      return false;
    }
  IntervalDesign d{nodes, weight_exponent, t};
  final_residual = interval_moment_residual(d);
  if (final_residual <= kTargetResidual) {
    out = std::move(nodes);
    return true;
  }
  return false;
}

}  // namespace

IntervalDesign interval_t_design(int weight_exponent, int strength, int n, std::uint64_t seed) {
  if (weight_exponent != 1 && weight_exponent != 2)
    throw DomainError("interval weight exponent must be 1 or 2");
  if (strength < 1) throw DomainError("interval design strength must be >= 1");
  if (n < 1) throw DomainError("interval design needs at least one node");

  // Chebyshev-like symmetric start.
  std::vector<double> start(n);
  for (int j = 0; j < n; ++j) start[j] = -std::cos(kPi * (j + 0.5) / n);

  double residual = 0.0;
  std::vector<double> solution;
  if (solve_from(start, weight_exponent, strength, solution, residual))
    return IntervalDesign{solution, weight_exponent, strength};

  std::mt19937_64 rng(seed ^ 0x5eed1234abcdefULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double best_residual = residual;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> nodes(n);
    for (auto& c : nodes) c = unif(rng);
    std::sort(nodes.begin(), nodes.end());
    if (solve_from(nodes, weight_exponent, strength, solution, residual))
      return IntervalDesign{solution, weight_exponent, strength};
    best_residual = std::min(best_residual, residual);
  }
  throw ConstructionError("interval_t_design: moment equations did not converge", best_residual);
}

Design bajnok_s3_design(const IntervalDesign& c1, const IntervalDesign& c2, int circle_points) {
  if (c1.weight_exponent != 1 || c2.weight_exponent != 2)
    throw PreconditionError(
        "bajnok_s3_design: first factor needs weight exponent 1, second exponent 2");
  if (circle_points < 3) throw DomainError("bajnok_s3_design: need at least 3 circle points");

  std::vector<Coord> pts;
  pts.reserve(c1.nodes.size() * c2.nodes.size() * static_cast<std::size_t>(circle_points));
  for (double a : c1.nodes) {
    const double ra = std::sqrt(std::max(0.0, 1.0 - a * a));
    for (double b : c2.nodes) {
      const double rb = std::sqrt(std::max(0.0, 1.0 - b * b));
      for (int k = 1; k <= circle_points; ++k) {
        const double ang = kTwoPi * k / circle_points;
        pts.push_back({a, b * ra, std::cos(ang) * ra * rb, std::sin(ang) * ra * rb});
      }
    }
  }
  return Design::equal_weight({Manifold::Sphere3, 1}, std::move(pts));
}

std::int64_t sphere3_tdesign_min_points(int t) {
  if (t < 0) throw DomainError("design strength must be nonnegative");
  auto c3 = [](std::int64_t n) { return n * (n - 1) * (n - 2) / 6; };  // C(n,3)
  if (t % 2 == 1) return 2 * c3(t / 2 + 3);
  return c3(t / 2 + 3) + c3(t / 2 + 2);
}

}  // namespace groupdesign
