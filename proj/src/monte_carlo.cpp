#include "ahls/monte_carlo.hpp"

#include <cmath>
#include <vector>

#include "ahls/error.hpp"
#include "ahls/parallel.hpp"

namespace ahls {

namespace {

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

}  // namespace

McEstimate mc_mean(const std::function<double(CounterRng&)>& draw, const QuadratureSpec& spec,
                   std::uint64_t stream_offset) {
  require(spec.mc_samples >= 2, "mc_samples must be >= 2");
  const std::int64_t total = spec.mc_samples;
  const std::int64_t block_count = std::min<std::int64_t>(256, total);
  std::vector<Moments> blocks(static_cast<std::size_t>(block_count));
  parallel_for(blocks.size(), [&](std::size_t b) {
    const std::int64_t lo = total * static_cast<std::int64_t>(b) / block_count;
    const std::int64_t hi = total * static_cast<std::int64_t>(b + 1) / block_count;
    Moments m;
    for (std::int64_t i = lo; i < hi; ++i) {
      CounterRng rng(spec.seed, stream_offset + static_cast<std::uint64_t>(i));
      const double v = draw(rng);
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "Monte Carlo sample is not finite");
      m.count += 1.0;
      const double delta = v - m.mean;
      m.mean += delta / m.count;
      m.m2 += delta * (v - m.mean);
    }
    blocks[b] = m;
  });
  Moments acc;
  for (const Moments& m : blocks) {
    if (m.count == 0.0) continue;
    const double count = acc.count + m.count;
    const double delta = m.mean - acc.mean;
    acc.mean += delta * m.count / count;
    acc.m2 += m.m2 + delta * delta * acc.count * m.count / count;
    acc.count = count;
  }
  McEstimate out;
  out.samples = total;
  out.estimate = acc.mean;
  const double variance = acc.m2 / (acc.count - 1.0);
  out.std_error = std::sqrt(std::max(0.0, variance) / acc.count);
  return out;
}

McEstimate mc_expectation(const Sampler& sampler, const PointFn& integrand, const QuadratureSpec& spec,
                          std::uint64_t stream_offset) {
  return mc_mean([&](CounterRng& rng) { return integrand(sampler(rng)); }, spec, stream_offset);
}

}  // namespace ahls
