#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ahls/chord.hpp"
#include "ahls/hls_body.hpp"
#include "ahls/radial_mean.hpp"
#include "ahls/special.hpp"

using namespace ahls;

namespace {

Vec vec1(double a) { return (Vec(1) << a).finished(); }
Vec vec2(double a, double b) { return (Vec(2) << a, b).finished(); }

// (n B(alpha+1, n))^{1/alpha}, with its limit at alpha = 0.
double gz_constant(int n, double alpha) {
  if (alpha == 0.0) {
    double harmonic = 0.0;
    for (int k = 1; k <= n; ++k) harmonic += 1.0 / k;
    return std::exp(-harmonic);
  }
  const double b = std::exp(std::lgamma(alpha + 1) + std::lgamma(n) - std::lgamma(alpha + 1 + n));
  return std::pow(n * b, 1 / alpha);
}

}  // namespace

TEST_CASE("radial mean body examples") {
  QuadratureSpec q;
  const SphereGrid g1 = sphere_grid(1, 2);
  const StarBody I = StarBody::cube(1);
  const HlsBodyResult r1 = radial_mean_body(I, 1.0, g1, q);
  CHECK(r1.body.radial(vec1(1)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1.body.radial(vec1(-1)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(radial_mean_body(I, -0.5, g1, q).body.radial(vec1(1)) == doctest::Approx(0.25).epsilon(1e-12));

  QuadratureSpec qf;
  qf.sphere_resolution = 256;
  const HlsBodyResult r2 = radial_mean_body(StarBody::cube(2), 2.0, sphere_grid(2, 256), qf);
  CHECK(volume(r2.body, qf) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("bridge examples") {
  QuadratureSpec q;
  const InequalityReport a = bridge_check(StarBody::cube(1), 1.0, sphere_grid(1, 2), q);
  CHECK(a.status == Status::Equality);
  CHECK(a.left <= 1e-6);
  const InequalityReport p = bridge_check(StarBody::cube(1), -0.5, sphere_grid(1, 2), q);
  CHECK(p.status == Status::Equality);
  CHECK(p.middle == doctest::Approx(1.0 / 64).epsilon(1e-6));
  CHECK(p.right == doctest::Approx(1.0 / 64).epsilon(1e-6));

  const HlsBodyResult h = hls_body(TestFunction::indicator(StarBody::cube(2)), 1.0, sphere_grid(2, 64), q);
  CHECK(h.body.radial(vec2(1, 0)) == doctest::Approx(0.5).epsilon(1e-9));
  for (double alpha : {0.5, 1.0, 2.0}) {
    const InequalityReport r = bridge_check(StarBody::cube(2), alpha, sphere_grid(2, 64), q);
    CHECK(r.status == Status::Equality);
    CHECK(r.left <= 1e-3);
  }
}

TEST_CASE("chord decomposition satisfies Fubini") {
  QuadratureSpec q;
  const StarBody bodies[] = {StarBody::cube(2), StarBody::ball(2), StarBody::simplex(3), StarBody::ball(3)};
  for (const StarBody& E : bodies) {
    const double v = *E.exact_volume();
    const SphereGrid g = sphere_grid(E.dim(), 6);
    for (const Vec& xi : g.directions) {
      CHECK(chord_decomposition(E, xi, q).total() == doctest::Approx(v).epsilon(2e-3));
      CHECK(shadow_integral(E, xi, [](double c) { return c; }, q).value == doctest::Approx(v).epsilon(1e-6));
    }
  }
}

TEST_CASE("chord length and complements") {
  const Vec xi = vec2(0.6, 0.8);
  const Mat C = orthonormal_complement(xi);
  CHECK((C.transpose() * xi).norm() <= 1e-14);
  CHECK(chord_length(StarBody::ball(2), Vec::Zero(2), xi) == doctest::Approx(2.0));
  CHECK(chord_length(StarBody::cube(2), vec2(0.5, 0.5), vec2(1, 0)) == doctest::Approx(1.0));
  CHECK(chord_length(StarBody::cube(2), vec2(3, 3), vec2(1, 0)) == 0.0);
}

TEST_CASE("gardner-zhang inclusion holds per direction") {
  QuadratureSpec q;
  const std::vector<double> alphas = {-0.5, 0.0, 0.5, 1.0, 2.0};
  const StarBody bodies[] = {StarBody::cube(2), StarBody::ball(2), StarBody::cross_polytope(2)};
  const SphereGrid g = sphere_grid(2, 32);
  for (const StarBody& E : bodies) {
    std::vector<std::vector<double>> normalized;
    for (double a : alphas) {
      const HlsBodyResult r = radial_mean_body(E, a, g, q);
      std::vector<double> row;
      for (double rho : r.body.radii()) row.push_back(rho / gz_constant(2, a));
      normalized.push_back(row);
    }
    for (std::size_t k = 1; k < alphas.size(); ++k)
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(normalized[k][i] <= normalized[k - 1][i] * (1 + 1e-6));
  }
}

TEST_CASE("simplex radial mean bodies are direction-wise proportional") {
  QuadratureSpec q;
  const std::vector<double> alphas = {-0.5, 0.0, 0.5, 1.0, 2.0};
  const SphereGrid g = sphere_grid(2, 32);
  const StarBody S = StarBody::simplex(2);
  const HlsBodyResult base = radial_mean_body(S, alphas.back(), g, q);
  for (double a : alphas) {
    const HlsBodyResult r = radial_mean_body(S, a, g, q);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double ratio = (r.body.radii()[i] / gz_constant(2, a)) / (base.body.radii()[i] / gz_constant(2, 2.0));
      CHECK(ratio == doctest::Approx(1.0).epsilon(1e-3));
    }
  }
}

TEST_CASE("radial mean body is continuous at zero") {
  QuadratureSpec q;
  const SphereGrid g = sphere_grid(2, 16);
  const StarBody E = StarBody::cross_polytope(2);
  const HlsBodyResult r0 = radial_mean_body(E, 0.0, g, q);
  for (double a : {-1e-3, 1e-3}) {
    const HlsBodyResult ra = radial_mean_body(E, a, g, q);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(ra.body.radii()[i] == doctest::Approx(r0.body.radii()[i]).epsilon(1e-3));
  }
}

TEST_CASE("radial mean bodies are convex") {
  QuadratureSpec q;
  const SphereGrid g = sphere_grid(2, 64);
  CHECK(convexity_check(radial_mean_body(StarBody::simplex(2), 1.0, g, q).body, q));
  CHECK(convexity_check(radial_mean_body(StarBody::cube(2), 0.5, g, q).body, q));
}
