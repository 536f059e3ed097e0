#pragma once

#include <Eigen/Dense>

namespace ahls {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec unit(int n, int axis) {
  Vec v = Vec::Zero(n);
  v(axis) = 1.0;
  return v;
}

inline Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace ahls
