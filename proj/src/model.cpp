#include "groupdesign/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groupdesign/errors.hpp"
#include "groupdesign/harmonics.hpp"

namespace groupdesign {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cx = cxdouble;

void require_nonnegative(int v, const char* what) {
  if (v < 0) throw DomainError(std::string(what) + " must be nonnegative");
}

// Polar/azimuthal angles of a unit 3-vector; phi = 0 at the poles.
void sphere2_angles(const double* v, double& theta, double& phi) {
  const double rxy = std::hypot(v[0], v[1]);
  theta = std::atan2(rxy, v[2]);
  phi = (rxy < 1e-300) ? 0.0 : wrap_angle_2pi(std::atan2(v[1], v[0]));
}

// Hyperspherical angles of a unit 4-vector: cos(chi) = x1 and
// (x2,x3,x4) = sin(chi) (sin t cos p, sin t sin p, cos t).
void sphere3_angles(const double* v, double& chi, double& theta, double& phi) {
  const double r3 = std::sqrt(v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  chi = std::atan2(r3, v[0]);
  if (r3 < 1e-300) {
    theta = 0.0;
    phi = 0.0;
    return;
  }
  const double rxy = std::hypot(v[1], v[2]);
  theta = std::atan2(rxy, v[3]);
  phi = (rxy < 1e-300) ? 0.0 : wrap_angle_2pi(std::atan2(v[2], v[1]));
}

void sphere2_basis_into(int max_level, double theta, double phi, cx* out) {
  std::size_t idx = 0;
  const double sqrt4pi = std::sqrt(4.0 * kPi);
  for (int l = 0; l <= max_level; ++l)
    for (int m = -l; m <= l; ++m) out[idx++] = sqrt4pi * spherical_harmonic(l, m, theta, phi);
}

void so3_basis_into(int max_level, double alpha, double beta, double gamma, cx* out) {
  std::size_t idx = 0;
  for (int l = 0; l <= max_level; ++l) {
    const double scale = std::sqrt(2.0 * l + 1.0);
    for (int m = -l; m <= l; ++m)
      for (int mp = -l; mp <= l; ++mp)
        out[idx++] = scale * wigner_D(l, m, mp, alpha, beta, gamma);
  }
}

void sphere3_basis_into(int max_level, double chi, double theta, double phi, cx* out) {
  std::size_t idx = 0;
  for (int n = 0; n <= max_level; ++n)
    for (int l = 0; l <= n; ++l)
      for (int m = -l; m <= l; ++m)
        out[idx++] = hyperspherical_harmonic(n, l, m, chi, theta, phi);
}

}  // namespace

Model Model::circle(int max_frequency) {
  require_nonnegative(max_frequency, "circle max frequency");
  Model m;
  m.manifold_ = {Manifold::Circle, 1};
  m.trunc_ = {max_frequency};
  std::size_t offset = 0;
  for (int k = 0; k <= max_frequency; ++k) {
    LevelInfo lv;
    lv.eigenvalue = kTwoPi * kTwoPi * k * k;
    lv.multiplicity = (k == 0) ? 1 : 2;
    lv.offset = offset;
    lv.index = {k, 0};
    offset += lv.multiplicity;
    m.levels_.push_back(lv);
  }
  m.dimension_ = offset;
  return m;
}

Model Model::torus(std::vector<int> max_frequencies) {
  if (max_frequencies.empty()) throw DomainError("torus needs at least one axis");
  for (int n : max_frequencies) require_nonnegative(n, "torus max frequency");
  Model m;
  m.manifold_ = {Manifold::Torus, static_cast<int>(max_frequencies.size())};
  m.trunc_ = max_frequencies;

  std::vector<std::vector<int>> freqs;
  std::vector<int> k(max_frequencies.size(), 0);
  // Enumerate the whole frequency box.
  std::size_t total = 1;
  for (int n : max_frequencies) total *= static_cast<std::size_t>(2 * n + 1);
  freqs.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const int span = 2 * max_frequencies[i] + 1;
      k[i] = static_cast<int>(rest % span) - max_frequencies[i];
      rest /= span;
    }
    freqs.push_back(k);
  }
  auto norm2 = [](const std::vector<int>& v) {
    long s = 0;
    for (int x : v) s += static_cast<long>(x) * x;
    return s;
  };
  std::sort(freqs.begin(), freqs.end(), [&](const auto& a, const auto& b) {
    const long na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
  });

  std::size_t offset = 0;
  int group = 0;
  for (std::size_t i = 0; i < freqs.size();) {
    std::size_t j = i;
    while (j < freqs.size() && norm2(freqs[j]) == norm2(freqs[i])) ++j;
    LevelInfo lv;
    lv.eigenvalue = kTwoPi * kTwoPi * static_cast<double>(norm2(freqs[i]));
    lv.multiplicity = j - i;
    lv.offset = offset;
    lv.index = {group++, 0};
    offset += lv.multiplicity;
    m.levels_.push_back(lv);
    i = j;
  }
  m.torus_freqs_ = std::move(freqs);
  m.dimension_ = offset;
  return m;
}

Model Model::sphere2(int max_level) {
  require_nonnegative(max_level, "sphere2 max level");
  Model m;
  m.manifold_ = {Manifold::Sphere2, 1};
  m.trunc_ = {max_level};
  std::size_t offset = 0;
  for (int l = 0; l <= max_level; ++l) {
    LevelInfo lv{static_cast<double>(l) * (l + 1), static_cast<std::size_t>(2 * l + 1), offset, {l, 0}};
    offset += lv.multiplicity;
    m.levels_.push_back(lv);
  }
  m.dimension_ = offset;
  return m;
}

Model Model::sphere3(int max_level) {
  require_nonnegative(max_level, "sphere3 max level");
  Model m;
  m.manifold_ = {Manifold::Sphere3, 1};
  m.trunc_ = {max_level};
  std::size_t offset = 0;
  for (int l = 0; l <= max_level; ++l) {
    LevelInfo lv{static_cast<double>(l) * (l + 2), static_cast<std::size_t>((l + 1) * (l + 1)),
                 offset, {l, 0}};
    offset += lv.multiplicity;
    m.levels_.push_back(lv);
  }
  m.dimension_ = offset;
  return m;
}

Model Model::so3(int max_level) {
  require_nonnegative(max_level, "so3 max level");
  Model m;
  m.manifold_ = {Manifold::SO3, 1};
  m.trunc_ = {max_level};
  std::size_t offset = 0;
  for (int l = 0; l <= max_level; ++l) {
    LevelInfo lv{static_cast<double>(l) * (l + 2),
                 static_cast<std::size_t>((2 * l + 1) * (2 * l + 1)), offset, {l, 0}};
    offset += lv.multiplicity;
    m.levels_.push_back(lv);
  }
  m.dimension_ = offset;
  return m;
}

Model Model::sphere2_x_so3(int level_s2, int level_so3) {
  require_nonnegative(level_s2, "s2 max level");
  require_nonnegative(level_so3, "so3 max level");
  Model m;
  m.manifold_ = {Manifold::Sphere2xSO3, 1};
  m.trunc_ = {level_s2, level_so3};
  std::size_t offset = 0;
  for (int l1 = 0; l1 <= level_s2; ++l1) {
    for (int l2 = 0; l2 <= level_so3; ++l2) {
      LevelInfo lv;
      lv.eigenvalue = static_cast<double>(l1) * (l1 + 1) * l2 * (l2 + 1);
      lv.multiplicity = static_cast<std::size_t>(2 * l1 + 1) * (2 * l2 + 1) * (2 * l2 + 1);
      lv.offset = offset;
      lv.index = {l1, l2};
      offset += lv.multiplicity;
      m.levels_.push_back(lv);
    }
  }
  m.dimension_ = offset;
  return m;
}

Model Model::make(const ManifoldId& m, const std::vector<int>& truncation) {
  switch (m.kind) {
    case Manifold::Circle:
      if (truncation.size() != 1) throw DomainError("circle truncation: one max frequency");
      return circle(truncation[0]);
    case Manifold::Torus:
      if (static_cast<int>(truncation.size()) != m.torus_dim)
        throw DomainError("torus truncation: one max frequency per axis");
      return torus(truncation);
    case Manifold::Sphere2:
      if (truncation.size() != 1) throw DomainError("sphere2 truncation: one max level");
      return sphere2(truncation[0]);
    case Manifold::Sphere3:
      if (truncation.size() != 1) throw DomainError("sphere3 truncation: one max level");
      return sphere3(truncation[0]);
    case Manifold::SO3:
      if (truncation.size() != 1) throw DomainError("so3 truncation: one max level");
      return so3(truncation[0]);
    case Manifold::Sphere2xSO3:
      if (truncation.size() != 2) throw DomainError("product truncation: two max levels");
      return sphere2_x_so3(truncation[0], truncation[1]);
  }
  throw DomainError("unknown manifold");
}

double Model::eigenvalue(std::size_t level) const {
  if (level >= levels_.size()) throw DomainError("level index beyond truncation");
  return levels_[level].eigenvalue;
}

std::size_t Model::multiplicity(std::size_t level) const {
  if (level >= levels_.size()) throw DomainError("level index beyond truncation");
  return levels_[level].multiplicity;
}

std::vector<int> Model::truncation() const { return trunc_; }

void Model::basis_into(const Coord& g, cx* out) const {
  if (g.size() != coord_size(manifold_))
    throw DomainError("basis: point has wrong coordinate count for " + to_string(manifold_));
  switch (manifold_.kind) {
    case Manifold::Circle: {
      out[0] = 1.0;
      std::size_t idx = 1;
      const cx w = std::polar(1.0, kTwoPi * g[0]);
      cx wk = 1.0;
      for (int k = 1; k <= trunc_[0]; ++k) {
        wk *= w;
        out[idx++] = wk;
        out[idx++] = std::conj(wk);
      }
      break;
    }
    case Manifold::Torus: {
      for (std::size_t t = 0; t < torus_freqs_.size(); ++t) {
        double phase = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) phase += torus_freqs_[t][i] * g[i];
        out[t] = std::polar(1.0, kTwoPi * phase);
      }
      break;
    }
    case Manifold::Sphere2: {
      double theta, phi;
      sphere2_angles(g.data(), theta, phi);
      sphere2_basis_into(trunc_[0], theta, phi, out);
      break;
    }
    case Manifold::Sphere3: {
      double chi, theta, phi;
      sphere3_angles(g.data(), chi, theta, phi);
      sphere3_basis_into(trunc_[0], chi, theta, phi, out);
      break;
    }
    case Manifold::SO3: {
      so3_basis_into(trunc_[0], g[0], g[1], g[2], out);
      break;
    }
    case Manifold::Sphere2xSO3: {
      double theta, phi;
      sphere2_angles(g.data(), theta, phi);
      const int l1max = trunc_[0];
      const int l2max = trunc_[1];
      thread_local std::vector<cx> s2buf, so3buf;
      s2buf.resize(static_cast<std::size_t>((l1max + 1) * (l1max + 1)));
      so3buf.resize(static_cast<std::size_t>((2 * l2max + 1) * (2 * l2max + 2) * (2 * l2max + 3) / 6));
      sphere2_basis_into(l1max, theta, phi, s2buf.data());
      so3_basis_into(l2max, g[3], g[4], g[5], so3buf.data());
      std::size_t idx = 0;
      for (int l1 = 0; l1 <= l1max; ++l1) {
        const std::size_t o1 = static_cast<std::size_t>(l1) * l1;
        for (int l2 = 0; l2 <= l2max; ++l2) {
          const std::size_t o2 = static_cast<std::size_t>(2 * l2 + 1) * (2 * l2) * (2 * l2 - 1) / 6;
          const std::size_t s2n = static_cast<std::size_t>(2 * l1 + 1);
          const std::size_t so3n = static_cast<std::size_t>(2 * l2 + 1) * (2 * l2 + 1);
          for (std::size_t a = 0; a < s2n; ++a)
            for (std::size_t b = 0; b < so3n; ++b) out[idx++] = s2buf[o1 + a] * so3buf[o2 + b];
        }
      }
      break;
    }
  }
}

std::vector<cx> Model::basis(const Coord& g) const {
  std::vector<cx> out(dimension_);
  basis_into(g, out.data());
  return out;
}

}  // namespace groupdesign
