#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ahls/linalg.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/sphere.hpp"

namespace ahls {

class CounterRng;

// A set that is star-shaped with respect to the origin, described by its
// radial function. Cheap to copy; the representation is immutable.
class StarBody {
 public:
  enum class Kind { Ball, Ellipsoid, Polytope, LinearImage, RadialRule, Sampled };
  enum class Shape { Generic, Simplex, CrossPolytope, Box };

  static StarBody ball(int n, double r = 1.0);
  // A * B^n for invertible A.
  static StarBody ellipsoid(const Mat& A);
  // {x : normals.row(i) . x <= offsets(i)} with offsets >= 0. Vertices are
  // enumerated when not supplied.
  static StarBody polytope(const Mat& normals, const Vec& offsets, std::vector<Vec> vertices = {},
                           std::string name = "polytope");
  // Convex hull of the origin and the standard basis.
  static StarBody simplex(int n);
  static StarBody cross_polytope(int n);
  static StarBody cube(int n);
  static StarBody box(const Vec& lo, const Vec& hi);
  static StarBody linear_image(const Mat& phi, const StarBody& body);
  // rho given on unit vectors; bound is an upper bound for rho.
  static StarBody radial_rule(int n, std::function<double(const Vec&)> rho, double bound, std::string name,
                              bool convex = false);
  // n = 2 body with rho(theta) = 1 + amplitude * cos(lobes * theta).
  static StarBody petal(double amplitude, int lobes);
  static StarBody sampled(SphereGrid grid, std::vector<double> radii, std::string name = "sampled");

  int dim() const;
  Kind kind() const;
  Shape shape() const;
  const std::string& name() const;

  // rho_K(x) = sup{l >= 0 : l x in K}; +inf when the ray stays inside.
  double radial(const Vec& x) const;
  double gauge(const Vec& x) const;
  bool contains(const Vec& x) const { return gauge(x) <= 1.0; }

  // True for balls, ellipsoids, polytopes and their linear images, and for
  // rules declared convex.
  bool known_convex() const;

  // Parameter interval {t : p + t d in K} for convex bodies; empty when the
  // line misses K.
  std::optional<std::pair<double, double>> line_section(const Vec& p, const Vec& d) const;

  // Extreme values of <x, u> over K.
  std::pair<double, double> support_interval(const Vec& u) const;

  std::vector<Vec> vertices() const;
  double circumradius() const;
  std::optional<double> exact_volume() const;

  // Structured access.
  const Mat& matrix() const;  // ellipsoid A, or linear-image map
  const StarBody& base() const;  // linear-image argument
  const Mat& normals() const;    // polytope facets
  const Vec& offsets() const;
  std::optional<std::pair<Vec, Vec>> axis_box() const;
  const SphereGrid& grid() const;
  const std::vector<double>& radii() const;

  // Uniform point of K (bounded bodies only).
  Vec sample_uniform(CounterRng& rng) const;

  struct Impl;

 private:
  explicit StarBody(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct DualMixedVolumeValue {
  double value = 0.0;
  double alpha = 0.0;
  bool finite = true;
};

double volume(const StarBody& K, const QuadratureSpec& spec);
// Exact volume of a bounded H-polytope in dimension 2 or 3, summed over
// facet pyramids. Redundant and empty constraints are allowed.
double polytope_volume(const Mat& normals, const Vec& offsets);
DualMixedVolumeValue dual_mixed_volume(const StarBody& K, const StarBody& L, double alpha, const QuadratureSpec& spec);
StarBody schwarz_symmetral_body(const StarBody& K, const QuadratureSpec& spec);
bool is_dilate(const StarBody& K, const StarBody& L, double tol);
// Midpoint test on sampled boundary pairs. tol < 0 selects 1e-9 for analytic
// bodies and 2e-3 for sampled ones (interpolation error).
bool convexity_check(const StarBody& K, const QuadratureSpec& spec, double tol = -1.0);

// Radial values on a grid, honouring a sampled body's own grid.
std::vector<double> radial_values(const StarBody& K, const SphereGrid& grid);

// CSV with header dir_1,...,dir_n,rho and shortest round-trip decimals.
void write_radial_csv(std::ostream& out, const SphereGrid& grid, const std::vector<double>& radii);
std::string format_double(double x);

}  // namespace ahls
