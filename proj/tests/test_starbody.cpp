#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "ahls/random.hpp"
#include "ahls/sphere.hpp"
#include "ahls/star_body.hpp"

using namespace ahls;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

// Radial function of [0,1]^2 in direction (cos t, sin t), first quadrant.
double cube_radius(double t) { return 1.0 / std::max(std::cos(t), std::sin(t)); }

Mat random_matrix(int n, CounterRng& rng) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform() * 2 - 1 + (i == j ? 2.0 : 0.0);
  return m;
}

}  // namespace

TEST_CASE("radial function examples") {
  CHECK(StarBody::ball(3).radial(Vec::Unit(3, 1)) == doctest::Approx(1.0));
  const StarBody s1 = StarBody::simplex(1);
  CHECK(s1.radial(vec1(1.0)) == doctest::Approx(1.0));
  CHECK(s1.radial(vec1(-1.0)) == 0.0);
  const double h = 1.0 / std::numbers::sqrt2;
  CHECK(StarBody::cross_polytope(2).radial(vec2(h, h)) == doctest::Approx(h));
}

TEST_CASE("gauge and radial function are dual") {
  const StarBody bodies[] = {StarBody::ball(2, 1.5), StarBody::cube(2), StarBody::cross_polytope(2),
                             StarBody::petal(0.5, 4), StarBody::simplex(2)};
  const SphereGrid grid = sphere_grid(2, 37);
  for (const StarBody& K : bodies) {
    for (const Vec& xi : grid.directions) {
      const double r = K.radial(xi);
      CHECK(r >= 0.0);
      if (r > 0.0 && std::isfinite(r)) CHECK(K.gauge(xi) * r == doctest::Approx(1.0));
    }
  }
  const StarBody B = StarBody::ball(3);
  const Vec x = (Vec(3) << 0.3, -2.0, 0.7).finished();
  CHECK(B.gauge(x) == doctest::Approx(x.norm()));
}

TEST_CASE("radial function is homogeneous of degree -1") {
  const StarBody K = StarBody::linear_image((Mat(2, 2) << 2, 1, 0, 1).finished(), StarBody::cube(2));
  const Vec x = vec2(0.3, 0.8);
  for (double c : {0.5, 2.0, 10.0}) CHECK(K.radial(c * x) * c == doctest::Approx(K.radial(x)));
}

TEST_CASE("volume examples") {
  QuadratureSpec q;
  CHECK(volume(StarBody::ball(2), q) == doctest::Approx(std::numbers::pi).epsilon(q.rel_tol));
  CHECK(volume(StarBody::simplex(2), q) == doctest::Approx(0.5).epsilon(q.rel_tol));
  CHECK(volume(StarBody::ball(3, 2.0), q) == doctest::Approx(8 * 4 * std::numbers::pi / 3).epsilon(q.rel_tol));
  CHECK(volume(StarBody::simplex(3), q) == doctest::Approx(1.0 / 6).epsilon(q.rel_tol));
}

TEST_CASE("polytope volume") {
  const StarBody c = StarBody::cube(3);
  CHECK(polytope_volume(c.normals(), c.offsets()) == doctest::Approx(1.0).epsilon(1e-12));
  const StarBody x = StarBody::cross_polytope(3);
  CHECK(polytope_volume(x.normals(), x.offsets()) == doctest::Approx(4.0 / 3).epsilon(1e-12));
  const StarBody s = StarBody::simplex(2);
  CHECK(polytope_volume(s.normals(), s.offsets()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("volume is linearly equivariant") {
  QuadratureSpec q;
  CounterRng rng(11, 0);
  const StarBody bases[] = {StarBody::cube(2), StarBody::ball(3), StarBody::cross_polytope(2)};
  for (const StarBody& K : bases) {
    const Mat phi = random_matrix(K.dim(), rng);
    const double expected = std::abs(phi.determinant()) * volume(K, q);
    CHECK(volume(StarBody::linear_image(phi, K), q) == doctest::Approx(expected).epsilon(q.rel_tol));
  }
}

TEST_CASE("dual mixed volume examples") {
  QuadratureSpec q;
  const double pi = std::numbers::pi;
  for (double a : {0.5, 1.0, 3.0})
    CHECK(dual_mixed_volume(StarBody::ball(2), StarBody::ball(2), a, q).value == doctest::Approx(pi));
  CHECK(dual_mixed_volume(StarBody::ball(2), StarBody::ball(2, 2.0), 1.0, q).value == doctest::Approx(2 * pi));

  // (1/2) * 8 * int_0^{pi/4} sec t dt over the eight congruent arcs of the centered cube
  const StarBody centered = StarBody::box(vec2(-0.5, -0.5), vec2(0.5, 0.5));
  const double oracle = 0.5 * 8 * 0.5 * std::log(std::tan(pi / 4 + pi / 8));
  CHECK(dual_mixed_volume(centered, StarBody::ball(2), 1.0, q).value == doctest::Approx(oracle).epsilon(1e-6));

  // [0,1]^2 on the first-quadrant arc, 64-panel Simpson oracle
  double sum = 0.0;
  const int m = 64 * 2;
  for (int i = 0; i <= m; ++i) {
    const double t = 0.5 * pi * i / m;
    const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
    sum += w * cube_radius(t);
  }
  const double simpson = 0.5 * sum * (0.5 * pi / m) / 3;
  CHECK(dual_mixed_volume(StarBody::cube(2), StarBody::ball(2), 1.0, q).value == doctest::Approx(simpson).epsilon(1e-6));
}

TEST_CASE("dual mixed volume inequality and its reverse") {
  QuadratureSpec q;
  q.sphere_resolution = 256;
  const int n = 2;
  const StarBody pairs[][2] = {{StarBody::cube(2), StarBody::ball(2)},
                               {StarBody::cross_polytope(2), StarBody::petal(0.3, 3)},
                               {StarBody::ball(2), StarBody::ball(2, 3.0)}};
  for (const auto& pair : pairs) {
    const double vk = volume(pair[0], q), vl = volume(pair[1], q);
    const bool dilate = is_dilate(pair[0], pair[1], 1e-6);
    for (double a : {0.5, 1.0, 1.5}) {
      const double lhs = dual_mixed_volume(pair[0], pair[1], a, q).value;
      const double rhs = std::pow(vk, (n - a) / n) * std::pow(vl, a / n);
      CHECK(lhs <= rhs * (1 + q.rel_tol));
      if (dilate) CHECK(lhs == doctest::Approx(rhs).epsilon(q.rel_tol));
      else CHECK(lhs < rhs * (1 - 1e-4));
    }
    for (double a : {3.0, 5.0}) {
      const double lhs = dual_mixed_volume(pair[0], pair[1], a, q).value;
      const double rhs = std::pow(vk, (n - a) / n) * std::pow(vl, a / n);
      CHECK(lhs >= rhs * (1 - q.rel_tol));
      if (dilate) CHECK(lhs == doctest::Approx(rhs).epsilon(q.rel_tol));
    }
  }
}

TEST_CASE("schwarz symmetral examples") {
  QuadratureSpec q;
  const Vec e = Vec::Unit(3, 0);
  CHECK(schwarz_symmetral_body(StarBody::ball(3, 3.0), q).radial(e) == doctest::Approx(3.0).epsilon(1e-6));
  const Vec u = vec2(0.6, -0.8);
  CHECK(schwarz_symmetral_body(StarBody::cube(2), q).radial(u) ==
        doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-6));
  CHECK(schwarz_symmetral_body(StarBody::simplex(2), q).radial(u) ==
        doctest::Approx(std::sqrt(1 / (2 * std::numbers::pi))).epsilon(1e-6));
}

TEST_CASE("dilate detection") {
  CHECK(is_dilate(StarBody::ball(2), StarBody::ball(2, 5.0), 1e-9));
  const StarBody K = StarBody::petal(0.4, 5);
  CHECK(is_dilate(K, K, 1e-12));
  CHECK_FALSE(is_dilate(StarBody::cube(2), StarBody::ball(2), 1e-3));
  CHECK(is_dilate(StarBody::simplex(2), StarBody::linear_image(Mat::Identity(2, 2) * 3, StarBody::simplex(2)), 1e-9));
}

TEST_CASE("convexity check examples") {
  QuadratureSpec q;
  CHECK(convexity_check(StarBody::ball(2), q));
  CHECK(convexity_check(StarBody::cross_polytope(2), q));
  CHECK(convexity_check(StarBody::cube(3), q));
  CHECK_FALSE(convexity_check(StarBody::petal(0.5, 4), q));
}

TEST_CASE("explicit segment test confirms the petal is not convex") {
  const StarBody P = StarBody::petal(0.5, 4);
  // tips of two adjacent lobes; the midpoint lies outside
  const Vec a = vec2(1.5, 0.0), b = vec2(0.0, 1.5);
  CHECK(P.contains(a * 0.999));
  CHECK(P.contains(b * 0.999));
  CHECK_FALSE(P.contains(0.5 * 0.999 * (a + b)));
}

TEST_CASE("sampled bodies interpolate their grid") {
  const SphereGrid grid = sphere_grid(2, 64);
  const StarBody C = StarBody::cube(2);
  const StarBody S = StarBody::sampled(grid, radial_values(C, grid));
  for (const Vec& xi : grid.directions) CHECK(S.radial(xi) == doctest::Approx(C.radial(xi)));
  CHECK(S.kind() == StarBody::Kind::Sampled);
}

TEST_CASE("radial csv schema") {
  const SphereGrid grid = sphere_grid(2, 4);
  std::ostringstream os;
  write_radial_csv(os, grid, radial_values(StarBody::ball(2), grid));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "dir_1,dir_2,rho");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "1");
  }
  CHECK(rows == 4);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("line sections of convex bodies") {
  const auto sec = StarBody::cube(2).line_section(vec2(0.5, 0.5), vec2(1.0, 0.0));
  REQUIRE(sec.has_value());
  CHECK(sec->first == doctest::Approx(-0.5));
  CHECK(sec->second == doctest::Approx(0.5));
  CHECK_FALSE(StarBody::cube(2).line_section(vec2(2.0, 2.0), vec2(1.0, 0.0)).has_value());
}
