#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ahls/autocorr.hpp"
#include "ahls/config.hpp"
#include "ahls/radial_mean.hpp"
#include "ahls/random.hpp"
#include "ahls/verify.hpp"

using namespace ahls;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Detail {
 public:
  Detail& operator()(const std::string& what, double value) {
    if (!os_.str().empty()) os_ << ", ";
    os_ << what << "=" << format_double(value);
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome c1() {
  Detail d;
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) worst = std::max(worst, std::abs(gamma_constant(n, n).value - 1.0));
  ok &= worst <= 1e-12;
  const long double oracle = std::tgamma(0.25L) / std::tgamma(0.75L);
  const double err = std::abs(gamma_constant(1, 0.5).value - static_cast<double>(oracle));
  ok &= err <= 1e-10;
  d("max|gamma(n,n)-1|", worst)("|gamma(1,1/2)-oracle|", err);
  return {ok, d.str()};
}

Outcome c2() {
  QuadratureSpec q;
  const InequalityReport r = verify_ahls_low(TestFunction::indicator(StarBody::cube(1)), 0.5, q);
  const double left_oracle = std::tgamma(0.25) / std::tgamma(0.75);
  const bool ok = r.ok() && std::abs(r.left - left_oracle) <= 1e-6 && std::abs(r.middle - 8.0 / 3) <= 1e-6 &&
                  std::abs(r.right - 8.0 / 3) <= 1e-6 && std::abs(r.margin1 - (left_oracle - 8.0 / 3)) <= 1e-6 &&
                  std::abs(r.margin1 - 0.292) <= 1e-3;
  Detail d;
  d("left", r.left)("middle", r.middle)("right", r.right)("margin1", r.margin1);
  return {ok, d.str()};
}

Outcome c3() {
  QuadratureSpec q;
  q.sphere_resolution = 256;
  Detail d;
  bool ok = true;
  for (auto [n, a] : {std::pair{1, 0.5}, std::pair{2, 1.0}}) {
    const InequalityReport r = verify_ahls_low(TestFunction::hls_extremal(n, a), a, q);
    const double e = std::abs(r.left - r.middle) / r.left;
    ok &= r.status == Status::Equality && e <= 1e-3;
    d("n" + std::to_string(n) + " |left-middle|/left", e);
  }
  CounterRng rng(q.seed, 0x5EA5000000ull);
  Mat S = Mat::Identity(2, 2);
  S(0, 1) = 2.0 * rng.uniform() - 1.0;
  const TestFunction f = TestFunction::hls_extremal(2, 1.0);
  const double m0 = verify_ahls_low(f, 1.0, q).middle;
  const double m1 = verify_ahls_low(compose_linear(f, S), 1.0, q).middle;
  ok &= rel(m1, m0) <= 1e-3;
  d("shear", S(0, 1))("middle change", rel(m1, m0));
  return {ok, d.str()};
}

Outcome c4() {
  QuadratureSpec q;
  const InequalityReport r = verify_ahls_high(TestFunction::indicator(StarBody::cube(1)), 2.0, q);
  const InequalityReport e = verify_ahls_high(TestFunction::hls_extremal(1, 2.0), 2.0, q);
  const double eq = std::abs(e.left - e.middle) / e.left;
  const bool ok = r.ok() && std::abs(r.right - 1.0 / 3) <= 1e-6 && e.status == Status::Equality && eq <= 1e-3;
  Detail d;
  d("right", r.right)("extremal |left-middle|/left", eq);
  return {ok, d.str()};
}

Outcome c5() {
  QuadratureSpec q;
  q.mc_samples = 1'000'000;
  Detail d;
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    std::vector<Vec> shifts;
    for (int k = 1; k <= 5; ++k) {
      Vec y(n);
      for (int i = 0; i < n; ++i) y(i) = 0.25 * k * (i % 2 == 0 ? 1.0 : -0.5);
      shifts.push_back(y);
    }
    double worst = 0.0;
    for (const Vec& y : shifts) {
      const double closed = std::exp(-y.lpNorm<1>()) / std::pow(2.0, n);
      const double mc = autocorrelation_mc(TestFunction::simplex_exponential(n), y, q).estimate;
      worst = std::max(worst, rel(mc, closed));
    }
    ok &= worst <= 2e-2;
    d("n" + std::to_string(n) + " max rel err", worst);
  }
  return {ok, d.str()};
}

Outcome c6() {
  QuadratureSpec q;
  const TestFunction f = TestFunction::simplex_exponential(1);
  Detail d;
  bool ok = true;
  double worst_closed = 0.0, worst_quad = 0.0;
  for (double a : {0.25, 0.5, 0.75}) {
    const double target = std::pow(2.0, a - 1);
    const InequalityReport c = verify_reverse_logconcave(f, a, q);
    const InequalityReport n = verify_reverse_logconcave(f, a, q, ReverseVariant::Hls, HlsOptions{false, false});
    worst_closed = std::max({worst_closed, std::abs(c.left - target), std::abs(c.middle - target)});
    worst_quad = std::max({worst_quad, std::abs(n.left - target), std::abs(n.middle - target)});
    ok &= c.status == Status::Equality && n.status == Status::Equality;
  }
  ok &= worst_closed <= 1e-6 && worst_quad <= 1e-3;
  d("closed-form max err", worst_closed)("quadrature max err", worst_quad);
  return {ok, d.str()};
}

Outcome c7() {
  QuadratureSpec q;
  q.sphere_resolution = 256;
  Detail d;
  bool ok = true;
  const std::pair<std::string, TestFunction> fs[] = {{"cube2", TestFunction::indicator(StarBody::cube(2))},
                                                     {"sexp1", TestFunction::simplex_exponential(1)},
                                                     {"sexp2", TestFunction::simplex_exponential(2)}};
  for (const auto& [name, f] : fs) {
    const double l1 = lp_functional(f, 1.0, q), l2 = lp_functional(f, 2.0, q);
    const int n = f.dim();
    const SphereGrid g = verification_grid(n, q);
    const double vh = volume(hls_body(f, n, g, q).body, q);
    const double vr = volume(radial_mean_function_body(f, n, g, q).body, q);
    const double eh = rel(vh, l1 * l1 / n), er = rel(vr, l1 * l1 / (l2 * l2));
    ok &= eh <= 1e-3 && er <= 1e-3;
    d(name + " H", eh)(name + " R", er);
  }
  return {ok, d.str()};
}

Outcome c8() {
  QuadratureSpec q;
  Detail d;
  bool ok = true;
  const SphereGrid g = sphere_grid(2, 64);
  for (double a : {0.5, 1.0, 2.0}) {
    const InequalityReport r = bridge_check(StarBody::cube(2), a, g, q);
    ok &= r.status == Status::Equality && r.left <= 1e-3;
    d("alpha " + format_double(a) + " max rel err", r.left);
  }
  const HlsBodyResult P = polar_projection_body(TestFunction::indicator(StarBody::cube(1)), 0.25, sphere_grid(1, 2), q);
  const InequalityReport pb = bridge_check(StarBody::cube(1), -0.5, sphere_grid(1, 2), q);
  const double rho = P.body.radii()[0];
  ok &= std::abs(rho - 1.0 / 64) <= 1e-6 && pb.status == Status::Equality;
  d("Pi rho", rho);
  return {ok, d.str()};
}

Outcome c9() {
  QuadratureSpec q;
  const std::vector<double> alphas = {-0.5, 0.0, 0.5, 1.0, 2.0};
  Detail d;
  bool ok = true;
  for (int n : {1, 2}) {
    const TestFunction f = TestFunction::simplex_exponential(n);
    const SphereGrid g = verification_grid(n, q);
    double worst = 0.0;
    for (double a : alphas) {
      const HlsBodyResult R = radial_mean_function_body(f, a, g, q);
      for (std::size_t i = 0; i < g.size(); ++i) {
        // autocorrelation decays like exp(-|t xi|_1)
        const double unit = 1.0 / g.directions[i].lpNorm<1>();
        worst = std::max(worst, std::abs(R.body.radii()[i] / (inclusion_normalizer(n, 0.0, a) * unit) - 1.0));
      }
    }
    const InequalityReport r = verify_inclusion(f, alphas, 0.0, q);
    ok &= worst <= 1e-3 && r.status == Status::Equality;
    d("sexp n" + std::to_string(n) + " max |ratio-1|", worst);
  }
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& [name, body] : {std::pair{"cube", StarBody::cube(2)}, std::pair{"disk", StarBody::ball(2)}}) {
    const InequalityReport r = verify_inclusion(TestFunction::indicator(body), alphas, inf, q);
    ok &= r.status == Status::Holds && r.margin1 >= -1e-6;
    d(std::string(name) + " margin", r.margin1);
  }
  return {ok, d.str()};
}

Outcome c10() {
  QuadratureSpec q;
  bool ok = true;
  int passed = 0;
  for (const auto& f : {TestFunction::simplex_exponential(2), TestFunction::indicator(StarBody::cube(2))})
    for (double a : {0.5, 1.0, 2.0}) {
      const bool c = check_convexity(f, a, q).status == Status::Holds;
      ok &= c;
      passed += c;
    }
  Detail d;
  d("convex bodies of 6", passed);
  return {ok, d.str()};
}

Outcome c11() {
  QuadratureSpec q;
  const TestFunction f = TestFunction::indicator(StarBody::cube(2));
  const InequalityReport low = verify_rearrangement_monotonicity(f, 1.0, q);
  const InequalityReport high = verify_rearrangement_monotonicity(f, 3.0, q);
  const bool ok = low.status == Status::Holds && low.left < low.middle && high.status == Status::Holds &&
                  high.left > high.middle;
  Detail d;
  d("alpha1 margin", low.margin1)("alpha3 margin", high.margin1);
  return {ok, d.str()};
}

Outcome c12() {
  QuadratureSpec q;
  const std::vector<double> alphas = {-0.75, -0.5, -0.25, 0.25, 0.5, 1.5};
  const std::vector<double> s = {0.5, 1.0, 2.0};
  const InequalityReport r = check_continuation(alphas, s, q);
  const bool ok = r.status == Status::Equality && r.left <= q.rel_tol && r.middle <= 10 * q.rel_tol;
  Detail d;
  d("max identity err", r.left)("split spread", r.middle);
  return {ok, d.str()};
}

Outcome c13() {
  QuadratureSpec q;
  q.mc_samples = 1'000'000;
  const int n = 2;
  const double s = 1.0;
  const TestFunction f = TestFunction::sconcave_simplex(n, s);
  const double l2 = lp_functional(f, 2.0, q);
  const double h = 1 / std::numbers::sqrt2;
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0}) {
    const Vec y = (Vec(2) << t * h, -t * h).finished();
    const double closed = l2 * l2 * std::pow(std::max(0.0, 1 - y.lpNorm<1>() / 2), n + 2 / s);
    worst = std::max(worst, rel(autocorrelation_mc(f, y, q).estimate, closed));
  }
  Detail d;
  d("max rel err", worst);
  return {worst <= 2e-2, d.str()};
}

Outcome c14() {
  const RunConfig preset = preset_config("paper-desk-scale");
  const auto first = run_checks(preset);
  const auto second = run_checks(preset);
  const std::string a = reports_json(first).dump(2), b = reports_json(second).dump(2);
  const bool ok = a == b && exit_code(first) == 0 && first.size() >= 14;
  Detail d;
  d("checks", static_cast<double>(first.size()))("report bytes", static_cast<double>(a.size()))(
      "violations", static_cast<double>(exit_code(first)));
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"sharp constant", c1},
      {"low chain on the unit interval", c2},
      {"low chain equality and affine invariance", c3},
      {"high chain", c4},
      {"simplex exponential autocorrelation vs Monte Carlo", c5},
      {"reverse chain equality", c6},
      {"volume identities", c7},
      {"bridge identities", c8},
      {"normalized radial mean radii", c9},
      {"convexity of H bodies", c10},
      {"rearrangement monotonicity", c11},
      {"continuation engine", c12},
      {"s-concave hyperplane autocorrelation", c13},
      {"determinism of the preset report", c14},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %2d: %s (%s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
