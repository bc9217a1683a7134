#pragma once

#include <array>

namespace groupdesign {

using Rotation = std::array<double, 9>;  // row-major 3x3

// Two-to-one covering homomorphism from unit quaternions (points of S^3)
// onto SO(3), with q = (x1, x2, x3, x4) read as the unitary
// [[x1 + i x2, x3 + i x4], [-x3 + i x4, x1 - i x2]].
// Antipodal quaternions map to the same rotation.
Rotation rotation_from_quaternion(const std::array<double, 4>& q);

// Active z-y-z Euler composition R = Rz(alpha) Ry(beta) Rz(gamma).
Rotation rotation_from_euler(double alpha, double beta, double gamma);

// Inverse of rotation_from_euler with alpha, gamma in [0, 2pi) and
// beta in [0, pi]; at beta = 0 or pi the redundant angle is folded into
// alpha and gamma is set to 0.
std::array<double, 3> euler_from_rotation(const Rotation& r);

// max(|R^T R - I|, |det R - 1|)
double rotation_defect(const Rotation& r);

double rotation_distance(const Rotation& a, const Rotation& b);  // Frobenius

Rotation rotation_multiply(const Rotation& a, const Rotation& b);

}  // namespace groupdesign
