#pragma once

#include <functional>
#include <vector>

#include "ahls/linalg.hpp"
#include "ahls/quadrature.hpp"

namespace ahls {

struct SphereGrid {
  enum class Layout { TwoPoint, Circle, ZPhi, Scattered };

  int dim = 0;
  Layout layout = Layout::TwoPoint;
  std::vector<Vec> directions;
  std::vector<double> weights;
  // ZPhi layout: directions[iz * n_phi + ip] has height z_nodes[iz] and
  // azimuth 2*pi*ip/n_phi.
  std::vector<double> z_nodes;
  int n_phi = 0;

  std::size_t size() const { return directions.size(); }

  // Weighted sum in grid order.
  double integrate(const std::vector<double>& values) const;

  // Interpolates grid values at a unit vector: linear in angle for n = 2,
  // bilinear in (z, phi) for n = 3, nearest neighbour for n >= 4.
  double interpolate(const std::vector<double>& values, const Vec& xi) const;

  bool same_layout(const SphereGrid& other) const;
};

// n = 1: {+1, -1}; n = 2: equal-angle; n = 3: Gauss-Legendre in z times
// uniform azimuth (2*resolution points); n >= 4: quasi-random equal weights.
SphereGrid sphere_grid(int n, int resolution);

// Integral over S^{n-1}. Adaptive in angle for n = 2, nested adaptive in
// (z, phi) for n = 3, the sphere grid at spec.sphere_resolution otherwise.
double integrate_sphere(const std::function<double(const Vec&)>& f, int n, const QuadratureSpec& spec);

}  // namespace ahls
