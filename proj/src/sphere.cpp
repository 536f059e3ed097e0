#include "ahls/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ahls/error.hpp"
#include "ahls/special.hpp"

namespace ahls {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxScattered = 65536;

// Positive root of x^{d+1} = x + 1 (generalised golden ratio).
double harmonious(int d) {
  double x = 2.0;
  for (int i = 0; i < 100; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

SphereGrid scattered_grid(int n, int resolution) {
  double count = std::pow(static_cast<double>(resolution), n - 1);
  const std::size_t total = static_cast<std::size_t>(std::min<double>(count, kMaxScattered));
  const int d = n + (n % 2);
  const double g = harmonious(d);
  std::vector<double> step(d);
  for (int k = 0; k < d; ++k) step[k] = std::fmod(std::pow(1.0 / g, k + 1), 1.0);

  SphereGrid grid;
  grid.dim = n;
  grid.layout = SphereGrid::Layout::Scattered;
  grid.directions.reserve(total);
  std::vector<double> u(d);
  for (std::size_t i = 0; i < total; ++i) {
    for (int k = 0; k < d; ++k) u[k] = std::fmod(0.5 + step[k] * static_cast<double>(i + 1), 1.0);
    Vec x(n);
    for (int k = 0; k < n; k += 2) {
      const double r = std::sqrt(-2.0 * std::log(std::max(u[k], 1e-300)));
      x(k) = r * std::cos(kTwoPi * u[k + 1]);
      if (k + 1 < n) x(k + 1) = r * std::sin(kTwoPi * u[k + 1]);
    }
    const double norm = x.norm();
    if (norm == 0.0) continue;
    grid.directions.push_back(x / norm);
  }
  grid.weights.assign(grid.directions.size(), sphere_area(n) / static_cast<double>(grid.directions.size()));
  return grid;
}

}  // namespace

double SphereGrid::integrate(const std::vector<double>& values) const {
  require(values.size() == weights.size(), "value count does not match sphere grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * values[i];
  return sum;
}

bool SphereGrid::same_layout(const SphereGrid& other) const {
  if (dim != other.dim || layout != other.layout || size() != other.size() || n_phi != other.n_phi) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (directions[i] != other.directions[i]) return false;
  return true;
}

double SphereGrid::interpolate(const std::vector<double>& values, const Vec& xi) const {
  require(values.size() == size(), "value count does not match sphere grid");
  switch (layout) {
    case Layout::TwoPoint:
      return xi(0) >= 0.0 ? values[0] : values[1];
    case Layout::Circle: {
      const double m = static_cast<double>(size());
      double theta = std::atan2(xi(1), xi(0));
      if (theta < 0.0) theta += kTwoPi;
      const double pos = theta / kTwoPi * m;
      const double fl = std::floor(pos);
      const double w = pos - fl;
      const std::size_t i0 = static_cast<std::size_t>(fl) % size();
      const std::size_t i1 = (i0 + 1) % size();
      return (1.0 - w) * values[i0] + w * values[i1];
    }
    case Layout::ZPhi: {
      const double z = std::clamp(xi(2), -1.0, 1.0);
      double phi = std::atan2(xi(1), xi(0));
      if (phi < 0.0) phi += kTwoPi;
      const double pos = phi / kTwoPi * n_phi;
      const double fl = std::floor(pos);
      const double wp = pos - fl;
      const int p0 = static_cast<int>(fl) % n_phi;
      const int p1 = (p0 + 1) % n_phi;
      auto ring = [&](std::size_t iz) {
        return (1.0 - wp) * values[iz * n_phi + p0] + wp * values[iz * n_phi + p1];
      };
      const std::size_t nz = z_nodes.size();
      if (z <= z_nodes.front()) return ring(0);
      if (z >= z_nodes.back()) return ring(nz - 1);
      const auto it = std::upper_bound(z_nodes.begin(), z_nodes.end(), z);
      const std::size_t hi = static_cast<std::size_t>(it - z_nodes.begin());
      const std::size_t lo = hi - 1;
      const double wz = (z - z_nodes[lo]) / (z_nodes[hi] - z_nodes[lo]);
      return (1.0 - wz) * ring(lo) + wz * ring(hi);
    }
    case Layout::Scattered: {
      std::size_t best = 0;
      double best_dot = -2.0;
      for (std::size_t i = 0; i < size(); ++i) {
        const double d = directions[i].dot(xi);
        if (d > best_dot) {
          best_dot = d;
          best = i;
        }
      }
      return values[best];
    }
  }
  return values.front();
}

SphereGrid sphere_grid(int n, int resolution) {
  require(n >= 1, "sphere grid dimension must be >= 1");
  require(resolution >= 1, "sphere grid resolution must be >= 1");
  SphereGrid grid;
  grid.dim = n;
  if (n == 1) {
    grid.layout = SphereGrid::Layout::TwoPoint;
    grid.directions = {vec({1.0}), vec({-1.0})};
    grid.weights = {1.0, 1.0};
    return grid;
  }
  if (n == 2) {
    grid.layout = SphereGrid::Layout::Circle;
    for (int k = 0; k < resolution; ++k) {
      const double theta = kTwoPi * k / resolution;
      grid.directions.push_back(vec({std::cos(theta), std::sin(theta)}));
    }
    grid.weights.assign(resolution, kTwoPi / resolution);
    return grid;
  }
  if (n == 3) {
    grid.layout = SphereGrid::Layout::ZPhi;
    const GaussRule& rule = gauss_legendre(resolution);
    grid.z_nodes = rule.nodes;
    grid.n_phi = 2 * resolution;
    const double dphi = kTwoPi / grid.n_phi;
    for (int iz = 0; iz < resolution; ++iz) {
      const double z = rule.nodes[iz];
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int ip = 0; ip < grid.n_phi; ++ip) {
        const double phi = dphi * ip;
        grid.directions.push_back(vec({r * std::cos(phi), r * std::sin(phi), z}));
        grid.weights.push_back(rule.weights[iz] * dphi);
      }
    }
    return grid;
  }
  return scattered_grid(n, resolution);
}

double integrate_sphere(const std::function<double(const Vec&)>& f, int n, const QuadratureSpec& spec) {
  require(n >= 1, "sphere dimension must be >= 1");
  if (n == 1) return f(vec({1.0})) + f(vec({-1.0}));
  const double pi = std::numbers::pi;
  if (n == 2) {
    std::vector<double> cuts;
    for (int k = 1; k < 8; ++k) cuts.push_back(k * pi / 4.0);
    auto g = [&](double theta) { return f(vec({std::cos(theta), std::sin(theta)})); };
    return integrate_adaptive(g, 0.0, kTwoPi, spec, cuts).value;
  }
  if (n == 3) {
    std::vector<double> phi_cuts;
    for (int k = 1; k < 8; ++k) phi_cuts.push_back(k * pi / 4.0);
    const std::vector<double> z_cuts{-std::sqrt(0.5), 0.0, std::sqrt(0.5)};
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    auto ring = [&](double z) {
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      auto g = [&](double phi) { return f(vec({r * std::cos(phi), r * std::sin(phi), z})); };
      return integrate_adaptive(g, 0.0, kTwoPi, inner, phi_cuts).value;
    };
    return integrate_adaptive(ring, -1.0, 1.0, spec, z_cuts).value;
  }
  const SphereGrid grid = sphere_grid(n, spec.sphere_resolution);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid.directions[i]);
  return grid.integrate(values);
}

}  // namespace ahls
