#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace salt {

/// Seeded ensemble over which every probe fits its constant.
struct ProbeEnsemble {
  std::uint64_t seed = 1;
  std::size_t members = 50;
  std::vector<int> cutoffs{4, 8, 16};
  double nu = 1.0;            ///< viscosity in the Assumption probes (κ = ν)
  std::size_t noise_count = 2;
  double decay_rate = 1.0;
  int xi_cutoff = 2;
  double xi_scale = 1.0;      ///< 0 turns every correlation field off
  double field_decay = 6.0;   ///< spectral decay of the random test fields
  bool single_mode_xi = false; ///< ξ_i = i^{-γ} cos(i x_2) e_1 instead of random fields
};

/// Top-order sign structure: R = LHS + ν‖f‖_V² on outer-shell fields with unit H norm.
struct SignCheck {
  std::vector<double> max_slack;  ///< per cutoff, max over the ensemble
  bool negative_at_largest = false;
};

struct ProbeReport {
  std::string id;
  std::size_t ensemble_size = 0;
  std::vector<int> cutoffs;
  std::vector<double> fitted;  ///< max ratio per cutoff
  double max_ratio = 0.0;
  double stability = 1.0;      ///< max/min of fitted constants
  std::optional<SignCheck> sign;

  bool finite() const;
};

/// Every probe id, in a fixed order.
const std::vector<std::string>& probe_ids();
/// Dimension (2 or 3) a probe runs in.
int probe_dimension(const std::string& id);

/// Fitted constant = max over the ensemble of |LHS| / RHS-structure, per cutoff.
ProbeReport bound_probe(const std::string& id, const ProbeEnsemble& ensemble);

/// CSV rows: probe,cutoff,fitted_constant,stability,sign_slack.
void write_probe_csv(std::ostream& out, const std::vector<ProbeReport>& reports);
void write_probe_summary(std::ostream& out, const std::vector<ProbeReport>& reports);

}  // namespace salt
