#pragma once

#include <cstdint>

#include "ahls/linalg.hpp"

namespace ahls {

// Counter-based generator: the i-th draw of stream s under seed k is a pure
// function of (k, s, i). No global state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();  // in (0, 1)
  double normal();
  double exponential();
  double gamma(double shape);
  double beta(double a, double b);
  Vec normal_vector(int n);
  Vec unit_vector(int n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace ahls
