#include "salt/correlation.hpp"

#include <cmath>
#include <limits>

#include "salt/random.hpp"
#include "salt/spectral.hpp"

namespace salt {

double CorrelationSet::tail_estimate() const {
  if (decay_rate <= 0.5) return std::numeric_limits<double>::infinity();
  // Σ_{i>M} i^{-2γ} ≤ ∫_M^∞ x^{-2γ} dx for M ≥ 1; the zeta value itself when M = 0.
  const double p = 2.0 * decay_rate;
  const auto m = static_cast<double>(xis.size());
  if (m == 0.0) return std::riemann_zeta(p);
  return std::pow(m, 1.0 - p) / (p - 1.0);
}

CorrelationSet build_correlation_set(const CorrelationSpec& spec) {
  if (!(spec.decay_rate > 0.0)) throw ArgumentError("correlation decay rate must be positive");
  if (spec.unbounded && spec.decay_rate <= 0.5)
    throw ArgumentError("decay rate must exceed 1/2 for a summable infinite correlation family");
  if (spec.dim != 2 && spec.dim != 3) throw ArgumentError("correlation dimension must be 2 or 3");
  if (spec.count > 0 && spec.cutoff < 1) throw ArgumentError("correlation cutoff must be at least 1");

  CorrelationSet set;
  set.decay_rate = spec.decay_rate;
  set.cutoff = spec.cutoff;
  const CounterRng rng(spec.seed);
  std::vector<double> squares;
  for (std::size_t i = 1; i <= spec.count; ++i) {
    const std::uint64_t field_seed = rng.bits({static_cast<std::uint64_t>(RngStream::kCorrelation), i});
    VectorField g = random_field({.dim = spec.dim,
                                  .cutoff = spec.cutoff,
                                  .kind = FieldKind::kDivergenceFree,
                                  .decay = 2.0,
                                  .seed = field_seed,
                                  .member = 0});
    g *= std::pow(static_cast<double>(i), -spec.decay_rate) / sup_norm_estimate(g, 3);
    const double norm = sup_norm_estimate(g, 3);
    set.norms3inf.push_back(norm);
    squares.push_back(norm * norm);
    set.xis.push_back(std::move(g));
  }
  set.summability = pairwise_sum(squares);
  return set;
}

}  // namespace salt
