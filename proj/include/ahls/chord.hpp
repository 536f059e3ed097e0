#pragma once

#include <functional>
#include <vector>

#include "ahls/linalg.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/star_body.hpp"

namespace ahls {

// Orthonormal basis of the hyperplane orthogonal to the unit vector xi, as
// the columns of an n x (n-1) matrix.
Mat orthonormal_complement(const Vec& xi);

// Length of E intersected with the line through p in direction xi (E convex).
double chord_length(const StarBody& E, const Vec& p, const Vec& xi);

// Integral over the shadow E|xi^perp of F(chord length), with F(0) = 0.
// Adaptive for n <= 3 (nested for n = 3), Monte Carlo over a bounding box
// of the shadow for n >= 4.
IntegrationResult shadow_integral(const StarBody& E, const Vec& xi, const std::function<double(double)>& F,
                                  const QuadratureSpec& spec);

// Chord lengths at quadrature nodes of the shadow, with weights.
struct ChordDecomposition {
  Vec xi;
  std::vector<Vec> points;  // on xi^perp
  std::vector<double> weights;
  std::vector<double> chords;

  double integrate(const std::function<double(double)>& F) const;
  double total() const { return integrate([](double c) { return c; }); }
};

ChordDecomposition chord_decomposition(const StarBody& E, const Vec& xi, const QuadratureSpec& spec);

}  // namespace ahls
