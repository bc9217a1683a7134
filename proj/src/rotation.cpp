#include "groupdesign/rotation.hpp"

#include <cmath>
#include <numbers>

#include "groupdesign/point.hpp"

namespace groupdesign {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

Rotation rotation_from_quaternion(const std::array<double, 4>& q) {
  const double x = q[0], y = q[1], u = q[2], v = q[3];
  return Rotation{
      x * x + y * y - u * u - v * v, 2.0 * (y * v + x * u),         -2.0 * (x * v - y * u),
      -2.0 * (x * u - y * v),        x * x - y * y - u * u + v * v, 2.0 * (x * y + u * v),
      2.0 * (x * v + y * u),         -2.0 * (x * y - u * v),        x * x - y * y + u * u - v * v};
}

Rotation rotation_from_euler(double alpha, double beta, double gamma) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  return Rotation{
      ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb,
      sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb,
      -sb * cg,               sb * sg,                 cb};
}

std::array<double, 3> euler_from_rotation(const Rotation& r) {
  const double sb = std::hypot(r[2], r[5]);
  const double beta = std::atan2(sb, r[8]);
  if (sb < 1e-12) {
    if (r[8] > 0) {
      // R = Rz(alpha + gamma)
      const double a = std::atan2(r[3], r[0]);
      return {wrap_angle_2pi(a), 0.0, 0.0};
    }
    // R = Rz(alpha - gamma) Ry(pi); fold the difference into alpha.
    const double a = std::atan2(-r[1], -r[0]);
    return {wrap_angle_2pi(a), kPi, 0.0};
  }
  const double alpha = std::atan2(r[5], r[2]);
  const double gamma = std::atan2(r[7], -r[6]);
  return {wrap_angle_2pi(alpha), beta, wrap_angle_2pi(gamma)};
}

double rotation_defect(const Rotation& r) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += r[k * 3 + i] * r[k * 3 + j];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  const double det = r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
                     r[2] * (r[3] * r[7] - r[4] * r[6]);
  return std::max(worst, std::abs(det - 1.0));
}

double rotation_distance(const Rotation& a, const Rotation& b) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Rotation rotation_multiply(const Rotation& a, const Rotation& b) {
  Rotation c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
      c[i * 3 + j] = s;
    }
  return c;
}

}  // namespace groupdesign
