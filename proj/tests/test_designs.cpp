#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "groupdesign/criteria.hpp"
#include "groupdesign/design.hpp"
#include "groupdesign/design_io.hpp"
#include "groupdesign/errors.hpp"
#include "groupdesign/interval_design.hpp"
#include "groupdesign/model.hpp"
#include "groupdesign/rotation.hpp"
#include "support/oracles.hpp"

using namespace groupdesign;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("groupdesign_test_" + name);
}

}  // namespace

TEST_CASE("circle_design: exactness and small cases") {
  CHECK_THROWS_AS(circle_design(0), DomainError);

  const Design one = circle_design(1);
  CHECK(one.size() == 1);
  CHECK(one.weight(0) == doctest::Approx(1.0));

  // 2n+1 points are exact for the frequency-n model
  const Model m1 = Model::circle(1);
  CHECK(oracles::max_abs_dev_from_identity(information_matrix(circle_design(3), m1)) <= 1e-14);

  // 5 points kill the frequencies 1..4
  const auto rep = verify_lambda(circle_design(5), Model::circle(4));
  CHECK(rep.max_residual <= 1e-12);
}

TEST_CASE("torus_grid: products of circle designs") {
  CHECK_THROWS_AS(torus_grid({3, 0}), DomainError);
  CHECK(torus_grid({1, 1}).size() == 1);

  CHECK(oracles::max_abs_dev_from_identity(
            information_matrix(torus_grid({3, 3}), Model::torus({1, 1}))) <= 1e-13);
  CHECK(oracles::max_abs_dev_from_identity(
            information_matrix(torus_grid({5, 3}), Model::torus({2, 1}))) <= 1e-13);
  CHECK(Model::torus({2, 1}).dimension() == 15);
}

TEST_CASE("mimura design: five unit points with the published fifth column") {
  const Design d = mimura_tight_2design();
  REQUIRE(d.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    double n2 = 0.0;
    for (double x : d.point(i)) n2 += x * x;
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-13));
  }
  const double c = 1.0 / std::sqrt(2.0);
  const Coord& last = d.point(4);
  CHECK(last[0] == doctest::Approx(c).epsilon(1e-13));
  CHECK(std::abs(last[1]) <= 1e-13);
  CHECK(last[2] == doctest::Approx(c).epsilon(1e-13));
  CHECK(std::abs(last[3]) <= 1e-13);
}

TEST_CASE("interval_t_design: canonical solutions and moment residuals") {
  // t = 1: symmetric weights force mean zero only
  const IntervalDesign d1 = interval_t_design(2, 1, 2);
  double mean = 0.0;
  for (double cnode : d1.nodes) mean += cnode;
  CHECK(std::abs(mean) <= 1e-10);

  // uniform weight, two nodes: +/- 1/sqrt(3)
  const IntervalDesign d2 = interval_t_design(2, 2, 2);
  CHECK(d2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(d2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));

  // semicircle weight, two nodes: +/- 1/2
  const IntervalDesign d3 = interval_t_design(1, 2, 2);
  CHECK(d3.nodes[0] == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(d3.nodes[1] == doctest::Approx(0.5).epsilon(1e-9));

  for (const auto& d : {d1, d2, d3}) CHECK(interval_moment_residual(d) <= 1e-10);

  // larger node sets still satisfy the moment equations
  for (int t : {3, 4, 5}) {
    const IntervalDesign big = interval_t_design(1, t, t + 2, 7);
    CHECK(interval_moment_residual(big) <= 1e-10);
  }

  // a single node cannot match both the first and second uniform moments
  CHECK_THROWS_AS(interval_t_design(2, 2, 1), ConstructionError);
  CHECK_THROWS_AS(interval_t_design(3, 2, 2), DomainError);
}

TEST_CASE("interval moments") {
  CHECK(interval_weight_moment(2, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(interval_weight_moment(2, 3) == 0.0);
  CHECK(interval_weight_moment(1, 2) == doctest::Approx(0.25));
  CHECK(interval_weight_moment(1, 4) == doctest::Approx(0.125));
}

TEST_CASE("bajnok_s3_design: geometry, cardinality, strength") {
  const IntervalDesign c1 = interval_t_design(1, 2, 2);
  const IntervalDesign c2 = interval_t_design(2, 2, 2);
  const Design d = bajnok_s3_design(c1, c2, 3);

  CHECK(d.size() == 3 * 2 * 2);
  for (std::size_t i = 0; i < d.size(); ++i) {
    double n2 = 0.0;
    for (double x : d.point(i)) n2 += x * x;
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  const auto rep = verify_lambda(d, Model::sphere3(2));
  CHECK(rep.passed);
  CHECK(rep.max_residual <= 1e-10);

  // tight strength check: level 3 is not integrated exactly
  CHECK_FALSE(verify_lambda(d, Model::sphere3(3)).passed);

  CHECK_THROWS_AS(bajnok_s3_design(c2, c1, 3), PreconditionError);
  CHECK_THROWS_AS(bajnok_s3_design(c1, c2, 2), DomainError);

  // more circle points only: still a 2-design
  CHECK(verify_lambda(bajnok_s3_design(c1, c2, 5), Model::sphere3(2)).passed);
}

TEST_CASE("sphere3_tdesign_min_points") {
  CHECK(sphere3_tdesign_min_points(2) == 5);
  CHECK(sphere3_tdesign_min_points(3) == 8);
  for (int t = 0; t <= 12; ++t) {
    const std::int64_t expected =
        (t % 2 == 1) ? 2 * oracles::binomial_int(t / 2 + 3, 3)
                     : oracles::binomial_int(t / 2 + 3, 3) + oracles::binomial_int(t / 2 + 2, 3);
    CHECK(sphere3_tdesign_min_points(t) == expected);
  }
}

TEST_CASE("load_point_file: recovers the two-decimal design once rows are unit") {
  // Rows rounded to two decimals are ~7e-4 off the sphere, beyond the
  // 1e-6 unit-row contract, so the raw file is rejected ...
  const auto raw = temp_file("mimura2dp_raw.txt");
  {
    std::ofstream out(raw);
    out << "0.22 0.67 -0.57 0.42\n"
        << "-0.57 0.42 0.22 -0.67\n"
        << "-0.57 -0.42 0.22 0.67\n"
        << "0.22 -0.67 -0.57 -0.42\n"
        << "0.71 0 0.71 0\n";
  }
  CHECK_THROWS_AS(load_point_file(raw.string(), 4), DataError);
  std::filesystem::remove(raw);

  // ... while the same two-decimal data written as unit rows loads and
  // matches the exact construction to the rounding precision.
  const double rows[5][4] = {{0.22, 0.67, -0.57, 0.42},
                             {-0.57, 0.42, 0.22, -0.67},
                             {-0.57, -0.42, 0.22, 0.67},
                             {0.22, -0.67, -0.57, -0.42},
                             {0.71, 0.0, 0.71, 0.0}};
  const auto path = temp_file("mimura2dp.txt");
  {
    std::ofstream out(path);
    for (const auto& r : rows) {
      const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
      out << r[0] / norm << ' ' << r[1] / norm << ' ' << r[2] / norm << ' ' << r[3] / norm
          << '\n';
    }
  }
  const Design loaded = load_point_file(path.string(), 4);
  const Design exact = mimura_tight_2design();
  REQUIRE(loaded.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(point_distance({Manifold::Sphere3, 1}, loaded.point(i), exact.point(i)) <= 1e-2);
  std::filesystem::remove(path);
}

TEST_CASE("load_point_file: error paths") {
  const auto empty = temp_file("empty.txt");
  std::ofstream(empty).close();
  CHECK_THROWS_AS(load_point_file(empty.string(), 4), DataError);
  std::filesystem::remove(empty);

  const auto bad = temp_file("bad.txt");
  {
    std::ofstream out(bad);
    out << "1 0 0 0\n0 zero 1 0\n";
  }
  CHECK_THROWS_WITH_AS(load_point_file(bad.string(), 4), doctest::Contains(":2"), ParseError);
  std::filesystem::remove(bad);

  const auto offsphere = temp_file("offsphere.txt");
  {
    std::ofstream out(offsphere);
    out << "0.5 0.5 0.5 0.6\n";
  }
  CHECK_THROWS_AS(load_point_file(offsphere.string(), 4), DataError);
  std::filesystem::remove(offsphere);

  CHECK_THROWS_AS(load_point_file("does_not_exist.txt", 4), IoError);
  CHECK_THROWS_AS(load_point_file("whatever.txt", 5), DomainError);
}

TEST_CASE("project_su2_to_so3: antipodal collapse and weight preservation") {
  // antipodal pair maps to one rotation with doubled weight
  const Coord q{0.3, -0.5, 0.2, std::sqrt(1.0 - 0.09 - 0.25 - 0.04)};
  Coord qneg = q;
  for (double& x : qneg) x = -x;
  const Design pair({Manifold::Sphere3, 1}, {q, qneg}, {0.5, 0.5});
  const Design image = project_su2_to_so3(pair);
  REQUIRE(image.size() == 1);
  CHECK(image.weight(0) == doctest::Approx(1.0));

  // the north-pole quaternion is the identity rotation
  const Design north({Manifold::Sphere3, 1}, {{1.0, 0.0, 0.0, 0.0}}, {1.0});
  const Design id = project_su2_to_so3(north);
  CHECK(id.point(0)[0] == doctest::Approx(0.0));
  CHECK(id.point(0)[1] == doctest::Approx(0.0));
  CHECK(id.point(0)[2] == doctest::Approx(0.0));

  // total weight is preserved for a generic design
  const Design generic = haar_sample({Manifold::Sphere3, 1}, 23, 6);
  const Design projected = project_su2_to_so3(generic);
  double total = 0.0;
  for (double w : projected.weights()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("euler_grid and sphere2_grid") {
  CHECK_THROWS_AS(euler_grid(0, 1, 1), DomainError);
  CHECK(euler_grid(1, 1, 1).size() == 1);

  // gimbal redundancy at beta = 0 and pi collapses grid points:
  // (alpha, 0, gamma) depends on alpha+gamma only, (alpha, pi, gamma) on
  // alpha-gamma, so the 2x2x2 endpoint grid has 4 distinct rotations.
  const Design g222 = euler_grid(2, 2, 2, AngleConvention::Endpoints);
  CHECK(g222.size() == 4);
  double total = 0.0;
  for (double w : g222.weights()) total += w;
  CHECK(total == doctest::Approx(1.0));
  CHECK(euler_grid(2, 2, 3, AngleConvention::Endpoints).size() == 12);

  const Design s2 = sphere2_grid(4, 6, AngleConvention::Endpoints);
  CHECK(s2.size() == 14);  // two poles plus 12 regular points
  for (std::size_t i = 0; i < s2.size(); ++i) {
    double n2 = 0.0;
    for (double x : s2.point(i)) n2 += x * x;
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(sphere2_grid(1, 1).size() == 1);

  // beta conventions: midpoints avoid the gimbal planes, cos-spaced
  // endpoints include both of them
  CHECK(euler_grid(2, 3, 2, AngleConvention::Midpoint).size() == 12);
  CHECK(euler_grid(2, 3, 2, AngleConvention::CosEndpoints).size() == 8);
}

TEST_CASE("product_design: counts and weights multiply") {
  const Design s2 = sphere2_grid(3, 4, AngleConvention::Midpoint);  // 12 points, no poles
  const Design so3 = project_su2_to_so3(
      bajnok_s3_design(interval_t_design(1, 2, 2), interval_t_design(2, 2, 2), 3));
  const Design prod = product_design(s2, so3);
  CHECK(prod.size() == s2.size() * so3.size());
  CHECK(prod.has_equal_weights(1e-12));

  const Design single({Manifold::SO3, 1}, {{0.1, 0.2, 0.3}}, {1.0});
  CHECK(product_design(s2, single).size() == s2.size());

  CHECK_THROWS_AS(product_design(so3, s2), DomainError);
}

TEST_CASE("haar_sample: determinism and sample validity") {
  for (Manifold kind : {Manifold::Circle, Manifold::Sphere2, Manifold::Sphere3, Manifold::SO3,
                        Manifold::Sphere2xSO3}) {
    const ManifoldId m{kind, 1};
    const Design a = haar_sample(m, 40, 12345);
    const Design b = haar_sample(m, 40, 12345);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a.point(i) == b.point(i));  // bitwise identical
  }

  const Design so3 = haar_sample({Manifold::SO3, 1}, 30, 8);
  for (std::size_t i = 0; i < so3.size(); ++i) {
    const Coord& e = so3.point(i);
    CHECK(rotation_defect(rotation_from_euler(e[0], e[1], e[2])) <= 1e-10);
  }

  const Design torus = haar_sample({Manifold::Torus, 3}, 10, 3);
  CHECK(torus.point(0).size() == 3);
}

TEST_CASE("design invariants: weights positive, normalized, duplicates merged") {
  CHECK_THROWS_AS(Design({Manifold::Circle, 1}, {{0.5}}, {0.0}), DomainError);
  CHECK_THROWS_AS(Design({Manifold::Circle, 1}, {{0.5}, {0.7}}, {0.5, 0.6}), DomainError);

  // duplicate circle points merge (1.0 and 2.0 both wrap to the same point)
  const Design d({Manifold::Circle, 1}, {{0.5}, {1.0}, {2.0}}, {0.25, 0.25, 0.5});
  CHECK(d.size() == 2);
  double total = 0.0;
  for (double w : d.weights()) total += w;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("every constructor yields a valid design") {
  const IntervalDesign c1 = interval_t_design(1, 2, 2);
  const IntervalDesign c2 = interval_t_design(2, 2, 2);
  const std::vector<Design> all = {
      circle_design(6),
      torus_grid({2, 3}),
      mimura_tight_2design(),
      bajnok_s3_design(c1, c2, 4),
      euler_grid(3, 3, 3, AngleConvention::Endpoints),
      euler_grid(3, 3, 3, AngleConvention::CosEndpoints),
      sphere2_grid(4, 5, AngleConvention::Endpoints),
      product_design(sphere2_grid(2, 3, AngleConvention::Midpoint),
                     euler_grid(2, 2, 2, AngleConvention::Midpoint)),
      haar_sample({Manifold::Sphere2xSO3, 1}, 50, 9),
      project_su2_to_so3(mimura_tight_2design()),
  };
  for (const Design& d : all) {
    double total = 0.0;
    for (double w : d.weights()) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (std::size_t i = 0; i < d.size(); ++i) {
      // stored points are canonical: canonicalization is a fixed point
      Coord copy = d.point(i);
      canonicalize_point(d.manifold(), copy);
      CHECK(copy == d.point(i));
      // and distinct
      for (std::size_t j = i + 1; j < d.size(); ++j)
        CHECK(point_distance(d.manifold(), d.point(i), d.point(j)) > 1e-9);
    }
  }
}

TEST_CASE("canonical text format round-trips bit-exactly") {
  const Design d = mimura_tight_2design();
  const auto path = temp_file("roundtrip.txt");
  save_text(d, path.string());
  const Design back = load_point_file(path.string(), 4);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k) CHECK(back.point(i)[k] == d.point(i)[k]);

  // saving the reloaded design reproduces the file byte for byte
  const auto path2 = temp_file("roundtrip2.txt");
  save_text(back, path2.string());
  std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().find('\r') == std::string::npos);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("canonical text format covers the other manifolds too") {
  struct Case {
    Design d;
    std::string name;
  };
  const std::vector<Case> cases = {
      {circle_design(5), "circle"},
      {torus_grid({2, 3}), "torus"},
      {sphere2_grid(3, 4, AngleConvention::Midpoint), "s2"},
      {euler_grid(3, 2, 3, AngleConvention::Midpoint), "so3"},
      {product_design(sphere2_grid(2, 3, AngleConvention::Midpoint),
                      euler_grid(2, 2, 2, AngleConvention::Midpoint)),
       "prod"},
  };
  for (const auto& c : cases) {
    const auto path = temp_file("rt_" + c.name + ".txt");
    save_text(c.d, path.string());
    const Design back = load_text(path.string(), c.d.manifold());
    REQUIRE(back.size() == c.d.size());
    for (std::size_t i = 0; i < c.d.size(); ++i) CHECK(back.point(i) == c.d.point(i));
    std::filesystem::remove(path);
  }
}

TEST_CASE("JSON design format round-trips weighted designs on every manifold") {
  std::vector<Design> designs;
  designs.push_back(Design({Manifold::Circle, 1}, {{0.25}, {0.75}}, {0.3, 0.7}));
  designs.push_back(haar_sample({Manifold::Torus, 2}, 5, 1));
  designs.push_back(sphere2_grid(2, 3, AngleConvention::Midpoint));
  designs.push_back(mimura_tight_2design());
  designs.push_back(euler_grid(2, 2, 2, AngleConvention::Midpoint));
  designs.push_back(haar_sample({Manifold::Sphere2xSO3, 1}, 4, 2));
  for (const Design& d : designs) {
    const Design back = design_from_json_string(to_json_string(d));
    REQUIRE(back.size() == d.size());
    CHECK(back.manifold() == d.manifold());
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(back.point(i) == d.point(i));
      CHECK(back.weight(i) == doctest::Approx(d.weight(i)).epsilon(1e-15));
    }
  }
}
