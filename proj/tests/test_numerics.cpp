#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ahls/error.hpp"
#include "ahls/monte_carlo.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/random.hpp"
#include "ahls/special.hpp"
#include "ahls/sphere.hpp"

using namespace ahls;

namespace {

// Euler reflection and recurrence give Gamma for negative non-integers from
// positive arguments only.
double gamma_oracle(double x) {
  if (x > 0) return std::exp(std::lgamma(x));
  return gamma_oracle(x + 1.0) / x;
}

double beta_oracle(double a, double b) { return gamma_oracle(a) * gamma_oracle(b) / gamma_oracle(a + b); }

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(q.validate(), Error);
  q = {};
  q.mc_samples = 0;
  CHECK_THROWS_AS(q.validate(), Error);
  q = {};
  q.radial_nodes = 0;
  CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("gauss legendre integrates polynomials exactly") {
  const GaussRule& rule = gauss_legendre(10);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 18);
  CHECK(sum == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
}

TEST_CASE("powerweight examples") {
  QuadratureSpec q;
  auto e = [](double t) { return std::exp(-t); };
  CHECK(integrate_powerweight(e, 2.0, std::nullopt, q) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate_powerweight(e, -0.5, 1.0, q) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-8));

  PowerWeightOptions opt;
  opt.support_end = 1.0;
  auto hat = [](double t) { return std::max(0.0, 1.0 - t); };
  CHECK(integrate_powerweight_detail(hat, 0.5, opt, q).value == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(integrate_powerweight(hat, 0.5, std::nullopt, q) == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("powerweight reproduces Gamma and its continuation") {
  QuadratureSpec q;
  auto e = [](double t) { return std::exp(-t); };
  for (double a : {0.25, 0.5, 1.0, 2.5}) {
    CAPTURE(a);
    CHECK(close(integrate_powerweight(e, a, std::nullopt, q), gamma_oracle(a), q.rel_tol));
  }
  for (double a : {-0.75, -0.5, -0.25}) {
    CAPTURE(a);
    CHECK(close(integrate_powerweight(e, a, 1.0, q), gamma_oracle(a), q.rel_tol));
  }
}

TEST_CASE("powerweight reproduces Beta continuation") {
  QuadratureSpec q;
  for (double s : {0.5, 1.0, 2.0}) {
    auto g = [s](double t) { return std::pow(std::max(0.0, 1.0 - s * t), 1.0 / s); };
    PowerWeightOptions opt;
    opt.g0 = 1.0;
    opt.support_end = 1.0 / s;
    for (double a : {-0.5, 0.5, 1.5}) {
      CAPTURE(s);
      CAPTURE(a);
      const double expected = std::pow(s, -a) * beta_oracle(a, 1.0 + 1.0 / s);
      CHECK(close(integrate_powerweight_detail(g, a, opt, q).value, expected, q.rel_tol));
    }
  }
}

TEST_CASE("continuation is independent of the split point") {
  QuadratureSpec q;
  auto e = [](double t) { return std::exp(-t); };
  for (double a : {-0.75, -0.25}) {
    PowerWeightOptions base;
    base.g0 = 1.0;
    base.split = 1.0;
    const double ref = integrate_powerweight_detail(e, a, base, q).value;
    for (double t0 : {0.5, 2.0}) {
      PowerWeightOptions opt = base;
      opt.split = t0;
      CHECK(close(integrate_powerweight_detail(e, a, opt, q).value, ref, 10 * q.rel_tol));
    }
  }
}

TEST_CASE("negative alpha without g0 is rejected") {
  QuadratureSpec q;
  CHECK_THROWS_AS(integrate_powerweight([](double t) { return std::exp(-t); }, -0.5, std::nullopt, q), Error);
}

TEST_CASE("slow tails are reported as non-convergent") {
  QuadratureSpec q;
  try {
    integrate_powerweight([](double t) { return 1.0 / (1.0 + t); }, 0.5, std::nullopt, q);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::NonConvergent || e.kind() == ErrorKind::DivergentIntegral));
  }
}

TEST_CASE("powerweight is deterministic") {
  QuadratureSpec q;
  auto g = [](double t) { return std::exp(-t * t) * (1 + std::sin(t)); };
  const double a = integrate_powerweight(g, 0.7, std::nullopt, q);
  const double b = integrate_powerweight(g, 0.7, std::nullopt, q);
  CHECK(a == b);
}

TEST_CASE("sphere grid examples") {
  const SphereGrid g1 = sphere_grid(1, 17);
  REQUIRE(g1.size() == 2);
  CHECK(g1.directions[0](0) == 1.0);
  CHECK(g1.directions[1](0) == -1.0);
  CHECK(g1.weights[0] == 1.0);
  CHECK(g1.weights[1] == 1.0);

  const SphereGrid g2 = sphere_grid(2, 4);
  REQUIRE(g2.size() == 4);
  for (double w : g2.weights) CHECK(w == doctest::Approx(std::numbers::pi / 2));

  for (int r : {8, 32}) {
    const SphereGrid g3 = sphere_grid(3, r);
    CHECK(g3.integrate(std::vector<double>(g3.size(), 1.0)) == doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));
  }
}

TEST_CASE("sphere grids have unit directions and the right total weight") {
  for (int n = 1; n <= 5; ++n) {
    const SphereGrid g = sphere_grid(n, 16);
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(g.directions[i].norm() - 1.0) <= 1e-12);
      total += g.weights[i];
    }
    CAPTURE(n);
    CHECK(total == doctest::Approx(sphere_area(n)).epsilon(1e-6));
  }
}

TEST_CASE("sphere quadrature integrates a smooth function") {
  QuadratureSpec q;
  q.sphere_resolution = 64;
  // second moment of a coordinate over S^2 is 4 pi / 3
  const double v = integrate_sphere([](const Vec& x) { return x(2) * x(2); }, 3, q);
  CHECK(v == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-8));
}

TEST_CASE("special functions") {
  CHECK(sphere_area(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
  CHECK(ball_volume(3) == doctest::Approx(4 * std::numbers::pi / 3));
  CHECK(beta_fn(0.5, 2.0) == doctest::Approx(4.0 / 3.0));
  CHECK(beta_fn(-0.5, 2.0) == doctest::Approx(beta_oracle(-0.5, 2.0)));
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-12));
  CHECK(digamma(4.5) == doctest::Approx(std::log(4.5) - 1 / 9.0 - 1 / (12 * 4.5 * 4.5) + 1 / (120 * std::pow(4.5, 4)) -
                                        1 / (252 * std::pow(4.5, 6)))
                            .epsilon(1e-7));
}

TEST_CASE("mc expectation examples") {
  QuadratureSpec q;
  Sampler uniform = [](CounterRng& rng) {
    Vec x(1);
    x(0) = rng.uniform();
    return x;
  };
  const McEstimate one = mc_expectation(uniform, [](const Vec&) { return 1.0; }, q);
  CHECK(one.estimate == 1.0);
  CHECK(one.std_error == 0.0);
  const McEstimate zero = mc_expectation(uniform, [](const Vec&) { return 0.0; }, q);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.std_error == 0.0);
  const McEstimate sq = mc_expectation(uniform, [](const Vec& x) { return x(0) * x(0); }, q);
  CHECK(sq.samples == q.mc_samples);
  CHECK(std::abs(sq.estimate - 1.0 / 3.0) <= 3 * sq.std_error);
}

TEST_CASE("mc is reproducible and seed dependent") {
  QuadratureSpec q;
  q.mc_samples = 10000;
  auto draw = [](CounterRng& rng) { return rng.normal(); };
  const McEstimate a = mc_mean(draw, q);
  const McEstimate b = mc_mean(draw, q);
  CHECK(a.estimate == b.estimate);
  q.seed += 1;
  CHECK(mc_mean(draw, q).estimate != a.estimate);
}

TEST_CASE("counter rng streams") {
  CounterRng a(1, 0), b(1, 0), c(1, 1);
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterRng r(7, 3);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    mean += u / 20000;
  }
  CHECK(std::abs(mean - 0.5) < 0.01);
  const Vec v = r.unit_vector(4);
  CHECK(v.norm() == doctest::Approx(1.0));
}
