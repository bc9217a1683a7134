#pragma once

#include <cstdint>
#include <vector>

#include "groupdesign/design.hpp"

namespace groupdesign {

// Equal-weight nodes c_1 < ... < c_n in [-1,1] whose averages reproduce
// the normalized moments of the weight w_i(x) = (1-x^2)^{(2-i)/2} for all
// monomials up to degree `strength` (i = 1: semicircle, i = 2: uniform).
struct IntervalDesign {
  std::vector<double> nodes;
  int weight_exponent = 2;  // i in {1, 2}
  int strength = 0;         // t
};

// Normalized moment  integral(x^r w_i) / integral(w_i)  on [-1,1].
double interval_weight_moment(int weight_exponent, int r);

// max_{1 <= r <= t} | mean(c^r) - moment_r |
double interval_moment_residual(const IntervalDesign& d);

// Damped Newton iteration on the moment residuals from Chebyshev-like
// starting nodes, with seeded randomized restarts. Throws
// ConstructionError (carrying the final residual) if no node set reaches
// residual 1e-10.
IntervalDesign interval_t_design(int weight_exponent, int strength, int n,
                                 std::uint64_t seed = 0);

// Composition of two interval designs and a uniform circle factor into an
// equal-weight design on S^3 with circle_points * n1 * n2 points:
//   x1 = c1,  x2 = c2 sqrt(1-c1^2),
//   (x3, x4) = (cos, sin)(2 pi k / circle_points) sqrt((1-c1^2)(1-c2^2)).
// c1 must carry weight exponent 1 and c2 exponent 2. With interval
// strength t = 2 the result is a spherical 2-design.
Design bajnok_s3_design(const IntervalDesign& c1, const IntervalDesign& c2, int circle_points);

// Cardinality lower bound for a spherical t-design on S^3:
//   t odd:   2 C(floor(t/2) + 3, 3)
//   t even:  C(t/2 + 3, 3) + C(t/2 + 2, 3)
// Tight designs meet it; they exist exactly for t in {1,2,3,4,5,7,11}.
std::int64_t sphere3_tdesign_min_points(int t);

}  // namespace groupdesign
