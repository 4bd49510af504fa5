#pragma once

#include <cstdint>
#include <vector>

#include "salt/field.hpp"

namespace salt {

/// Correlation fields ξ_1..ξ_M of the transport noise.
struct CorrelationSet {
  std::vector<VectorField> xis;
  std::vector<double> norms3inf;  ///< sup_norm_estimate(ξ_i, 3)
  double summability = 0.0;       ///< Σ_i norms3inf_i²
  double decay_rate = 1.0;        ///< γ in amplitude_i = i^{-γ}
  int cutoff = 0;                 ///< K_ξ

  std::size_t size() const { return xis.size(); }
  bool empty() const { return xis.empty(); }
  /// Σ_{i>M} i^{-2γ}: what the truncation to M columns leaves out (infinite for γ ≤ 1/2).
  double tail_estimate() const;
};

struct CorrelationSpec {
  int dim = 2;
  std::size_t count = 0;   ///< M
  double decay_rate = 1.0; ///< γ
  int cutoff = 2;          ///< K_ξ
  std::uint64_t seed = 1;
  /// The set stands for an infinite family truncated at M; then γ must exceed 1/2.
  bool unbounded = false;
};

/// ξ_i = i^{-γ} g_i / ‖g_i‖_{W^{3,∞}} with g_i a seeded random divergence-free field at cutoff K_ξ.
CorrelationSet build_correlation_set(const CorrelationSpec& spec);

}  // namespace salt
