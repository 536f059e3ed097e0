#include "ahls/chord.hpp"

#include <algorithm>
#include <cmath>

#include "ahls/error.hpp"
#include "ahls/monte_carlo.hpp"

namespace ahls {

namespace {

std::vector<double> projections(const StarBody& E, const Vec& u, double lo, double hi) {
  std::vector<double> out;
  for (const Vec& v : E.vertices()) {
    const double s = v.dot(u);
    if (s > lo && s < hi) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Range of s with a positive chord through base + s u.
std::optional<std::pair<double, double>> slice_range(const StarBody& E, const Vec& base, const Vec& u, const Vec& xi,
                                                     double lo, double hi) {
  constexpr int kScan = 64;
  int first = -1, last = -1;
  auto positive = [&](double s) { return chord_length(E, base + s * u, xi) > 0.0; };
  for (int i = 0; i <= kScan; ++i) {
    const double s = lo + (hi - lo) * i / kScan;
    if (positive(s)) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;
  auto bisect = [&](double in, double out) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (in + out);
      (positive(mid) ? in : out) = mid;
    }
    return 0.5 * (in + out);
  };
  const double step = (hi - lo) / kScan;
  const double s0 = lo + step * first, s1 = lo + step * last;
  return std::make_pair(first == 0 ? s0 : bisect(s0, s0 - step), last == kScan ? s1 : bisect(s1, s1 + step));
}

struct ShadowBox {
  Mat basis;
  Vec lo, hi;
};

ShadowBox shadow_box(const StarBody& E, const Vec& xi) {
  ShadowBox box;
  box.basis = orthonormal_complement(xi);
  const int m = static_cast<int>(box.basis.cols());
  box.lo.resize(m);
  box.hi.resize(m);
  for (int k = 0; k < m; ++k) {
    auto [a, b] = E.support_interval(box.basis.col(k));
    box.lo(k) = a;
    box.hi(k) = b;
  }
  return box;
}

}  // namespace

Mat orthonormal_complement(const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  if (n == 1) return Mat(1, 0);
  if (n == 2) {
    Mat B(2, 1);
    B << -xi(1), xi(0);
    return B;
  }
  const Mat column = xi;
  Eigen::HouseholderQR<Mat> qr(column);
  const Mat Q = qr.householderQ() * Mat::Identity(n, n);
  return Q.rightCols(n - 1);
}

double chord_length(const StarBody& E, const Vec& p, const Vec& xi) {
  const auto section = E.line_section(p, xi);
  if (!section) return 0.0;
  return std::max(0.0, section->second - section->first) * xi.norm();
}

IntegrationResult shadow_integral(const StarBody& E, const Vec& xi, const std::function<double(double)>& F,
                                  const QuadratureSpec& spec) {
  const int n = E.dim();
  require(xi.size() == n, "direction dimension does not match body");
  auto value_at = [&](const Vec& p) {
    const double c = chord_length(E, p, xi);
    return c > 0.0 ? F(c) : 0.0;
  };
  if (n == 1) {
    IntegrationResult r;
    r.value = value_at(Vec::Zero(1));
    r.converged = true;
    return r;
  }
  const ShadowBox box = shadow_box(E, xi);
  if (n == 2) {
    const Vec u = box.basis.col(0);
    const auto cuts = projections(E, u, box.lo(0), box.hi(0));
    return integrate_adaptive([&](double s) { return value_at(s * u); }, box.lo(0), box.hi(0), spec, cuts);
  }
  if (n == 3) {
    const Vec u1 = box.basis.col(0), u2 = box.basis.col(1);
    const auto cuts1 = projections(E, u1, box.lo(0), box.hi(0));
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    double inner_error = 0.0;
    auto line = [&](double s1) {
      const Vec base = s1 * u1;
      const auto range = slice_range(E, base, u2, xi, box.lo(1), box.hi(1));
      if (!range) return 0.0;
      const auto cuts2 = projections(E, u2, range->first, range->second);
      const IntegrationResult r =
          integrate_adaptive([&](double s2) { return value_at(base + s2 * u2); }, range->first, range->second, inner, cuts2);
      inner_error = std::max(inner_error, r.error);
      return r.value;
    };
    IntegrationResult out = integrate_adaptive(line, box.lo(0), box.hi(0), spec, cuts1);
    out.error += inner_error * (box.hi(0) - box.lo(0));
    return out;
  }
  double box_volume = 1.0;
  for (int k = 0; k < n - 1; ++k) box_volume *= box.hi(k) - box.lo(k);
  const McEstimate mc = mc_mean(
      [&](CounterRng& rng) {
        Vec p = Vec::Zero(n);
        for (int k = 0; k < n - 1; ++k) p += (box.lo(k) + rng.uniform() * (box.hi(k) - box.lo(k))) * box.basis.col(k);
        return value_at(p);
      },
      spec, 0xC4D0000000ull);
  IntegrationResult r;
  r.value = box_volume * mc.estimate;
  r.error = box_volume * mc.std_error;
  r.converged = true;
  return r;
}

double ChordDecomposition::integrate(const std::function<double(double)>& F) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < chords.size(); ++i)
    if (chords[i] > 0.0) sum += weights[i] * F(chords[i]);
  return sum;
}

ChordDecomposition chord_decomposition(const StarBody& E, const Vec& xi, const QuadratureSpec& spec) {
  const int n = E.dim();
  ChordDecomposition out;
  out.xi = xi;
  auto add = [&](const Vec& p, double w) {
    out.points.push_back(p);
    out.weights.push_back(w);
    out.chords.push_back(chord_length(E, p, xi));
  };
  if (n == 1) {
    add(Vec::Zero(1), 1.0);
    return out;
  }
  const ShadowBox box = shadow_box(E, xi);
  auto driver = [&](const Vec& p) {
    const double c = chord_length(E, p, xi);
    return c + std::sqrt(c);
  };
  if (n == 2) {
    const Vec u = box.basis.col(0);
    const auto cuts = projections(E, u, box.lo(0), box.hi(0));
    for (auto [s, w] : adaptive_rule([&](double s) { return driver(s * u); }, box.lo(0), box.hi(0), spec, cuts))
      add(s * u, w);
    return out;
  }
  if (n == 3) {
    const Vec u1 = box.basis.col(0), u2 = box.basis.col(1);
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    auto line_integral = [&](double s1) {
      const Vec base = s1 * u1;
      const auto range = slice_range(E, base, u2, xi, box.lo(1), box.hi(1));
      if (!range) return 0.0;
      return integrate_adaptive([&](double s2) { return driver(base + s2 * u2); }, range->first, range->second, inner)
          .value;
    };
    const auto cuts1 = projections(E, u1, box.lo(0), box.hi(0));
    for (auto [s1, w1] : adaptive_rule(line_integral, box.lo(0), box.hi(0), spec, cuts1)) {
      const Vec base = s1 * u1;
      const auto range = slice_range(E, base, u2, xi, box.lo(1), box.hi(1));
      if (!range) continue;
      for (auto [s2, w2] :
           adaptive_rule([&](double s2) { return driver(base + s2 * u2); }, range->first, range->second, inner))
        add(base + s2 * u2, w1 * w2);
    }
    return out;
  }
  double box_volume = 1.0;
  for (int k = 0; k < n - 1; ++k) box_volume *= box.hi(k) - box.lo(k);
  const std::int64_t count = spec.mc_samples;
  for (std::int64_t i = 0; i < count; ++i) {
    CounterRng rng(spec.seed, 0xC4D0000000ull + static_cast<std::uint64_t>(i));
    Vec p = Vec::Zero(n);
    for (int k = 0; k < n - 1; ++k) p += (box.lo(k) + rng.uniform() * (box.hi(k) - box.lo(k))) * box.basis.col(k);
    add(p, box_volume / static_cast<double>(count));
  }
  return out;
}

}  // namespace ahls
