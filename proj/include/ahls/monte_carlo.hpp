#pragma once

#include <cstdint>
#include <functional>

#include "ahls/linalg.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/random.hpp"

namespace ahls {

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

using Sampler = std::function<Vec(CounterRng&)>;
using PointFn = std::function<double(const Vec&)>;

// Sample mean of integrand(sampler()) over spec.mc_samples draws. Draw i uses
// stream (stream_offset + i) of spec.seed; blocks are merged in fixed order.
McEstimate mc_expectation(const Sampler& sampler, const PointFn& integrand, const QuadratureSpec& spec,
                          std::uint64_t stream_offset = 0);

// Same, with a scalar draw that consumes the generator directly.
McEstimate mc_mean(const std::function<double(CounterRng&)>& draw, const QuadratureSpec& spec,
                   std::uint64_t stream_offset = 0);

}  // namespace ahls
