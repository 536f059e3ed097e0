#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ahls/linalg.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/star_body.hpp"

namespace ahls {

class CounterRng;

// Decreasing profile h on [0, inf) with h(inf) = 0.
struct Profile {
  enum class Kind { Cauchy, Exponential, Power, Step, Custom };

  Kind kind = Kind::Step;
  double beta = 0.0;  // Cauchy: (1 + r^2)^{-beta}
  double s = 0.0;     // Power: (1 - r)_+^{1/s}
  std::function<double(double)> fn;  // Custom
  std::optional<double> support;     // Custom: h = 0 beyond this radius
  std::string label;
  struct RadiusCache;
  std::shared_ptr<RadiusCache> cache;  // Custom: inverse-CDF tables per dimension

  static Profile cauchy(double beta);
  static Profile exponential();
  static Profile power(double s);
  static Profile step();
  static Profile custom(std::function<double(double)> h, std::optional<double> support, std::string label);

  double operator()(double r) const;
  // Largest r with h(r) >= u, for 0 < u <= h(0).
  double inverse(double u) const;
  // n * int_0^inf r^{n-1} h(r)^p dr
  double moment(int n, double p, const QuadratureSpec& spec) const;
  // Radius beyond which h vanishes, if any.
  std::optional<double> support_radius() const;
  // Draw r with density proportional to r^{n-1} h(r).
  double sample_radius(int n, CounterRng& rng) const;
};

// Every family is f(x) = a * h(||x - x0||_K) for a star body K and a
// decreasing profile h.
class TestFunction {
 public:
  enum class Family { HlsExtremal, SimplexExponential, SConcaveSimplex, Indicator, CustomRadialDecreasing };

  // a (1 + |phi(x - x0)|^2)^{-(n + alpha)/2}; the same exponent serves both
  // alpha < n and alpha > n.
  static TestFunction hls_extremal(int n, double alpha, double a = 1.0, std::optional<Mat> phi = std::nullopt,
                                   std::optional<Vec> x0 = std::nullopt);
  // a e^{-||x - x0||_{M Delta_n}}
  static TestFunction simplex_exponential(int n, double a = 1.0, std::optional<Vec> x0 = std::nullopt,
                                          std::optional<Mat> M = std::nullopt);
  // a (1 - ||x||_{Delta_n})_+^{1/s}
  static TestFunction sconcave_simplex(int n, double s, double a = 1.0);
  static TestFunction indicator(const StarBody& E, double a = 1.0);
  // a h(|x| / radius)
  static TestFunction custom_radial(int n, Profile h, double a = 1.0, double radius = 1.0);
  // General gauge profile; family is the caller's tag.
  static TestFunction gauge_profile(Family family, const StarBody& K, Profile h, double a, Vec x0, double alpha = 0.0,
                                    double s = 0.0);

  int dim() const { return body_->dim(); }
  Family family() const { return family_; }
  double amplitude() const { return a_; }
  const StarBody& body() const { return *body_; }
  const Vec& center() const { return x0_; }
  const Profile& profile() const { return profile_; }
  double alpha() const { return alpha_; }  // HlsExtremal
  double s() const { return s_; }          // SConcaveSimplex
  std::string describe() const;

  double operator()(const Vec& x) const;
  double max_value() const { return a_ * profile_(0.0); }

  // K is a centred ball and x0 = 0.
  bool radially_symmetric() const;
  // f is a translate of its symmetric decreasing rearrangement.
  bool symmetric_up_to_translation() const;
  // K is a ball or an ellipsoid (f depends on |A^{-1}(x - x0)| only).
  bool ellipsoidal() const;

  // Draw from the density f / ||f||_1.
  Vec sample(CounterRng& rng) const;

 private:
  TestFunction(Family family, std::shared_ptr<StarBody> body, Profile profile, double a, Vec x0, double alpha,
               double s);

  Family family_;
  std::shared_ptr<StarBody> body_;
  Profile profile_;
  double a_;
  Vec x0_;
  double alpha_;
  double s_;
};

std::string to_string(TestFunction::Family family);

// x -> f(S x) for invertible S, kept in the same family.
TestFunction compose_linear(const TestFunction& f, const Mat& S);

// (int f^p)^{1/p}; a functional, not a norm, when p < 1.
double lp_functional(const TestFunction& f, double p, const QuadratureSpec& spec);

// Lebesgue measure of {f >= t} for t > 0.
double superlevel_volume(const TestFunction& f, double t, const QuadratureSpec& spec);

// Symmetric decreasing rearrangement, obtained by inverting the level-volume
// map: f* = a h(|x| / R) with omega_n R^n = vol K.
TestFunction schwarz_rearrangement(const TestFunction& f, const QuadratureSpec& spec);

// Largest relative difference of superlevel volumes on 256 log-spaced levels
// in [1e-8 max f, max f].
double level_volume_discrepancy(const TestFunction& f, const TestFunction& g, const QuadratureSpec& spec);

// Midpoint concavity of log f (s = 0), f^s (0 < s < inf) or of the support
// (s = inf) on sampled pairs of support points.
bool concavity_check(const TestFunction& f, double s, const QuadratureSpec& spec);

}  // namespace ahls
