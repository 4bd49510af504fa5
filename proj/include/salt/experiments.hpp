#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "salt/noise.hpp"

namespace salt {

/// Itô vs Stratonovich Galerkin runs driven by the same Brownian path.
struct ConsistencySpec {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  int cutoff = 4;
  std::size_t n = 16;
  std::size_t noise_count = 2;
  double decay_rate = 1.0;
  int xi_cutoff = 2;
  double nu = 4.0;
  double amplitude = 1.0;  ///< ‖x₀‖
  double t_end = 0.5;
  std::vector<double> dts{1e-2, 5e-3, 2.5e-3};
};

struct ConsistencyResult {
  std::vector<std::uint64_t> seeds;
  std::vector<double> dts;
  std::vector<std::vector<double>> differences;  ///< [seed][dt] terminal ‖x_Itô − x_Strat‖/‖x_Strat‖
  std::vector<double> mean;                      ///< per dt
  std::vector<double> ratios;                    ///< mean[j]/mean[j+1]
};

/// The path is generated once at the finest dt and coarsened for the others, so every
/// resolution sees the same Brownian motion.
ConsistencyResult consistency_experiment(const ConsistencySpec& spec);

/// seed,dt,relative_difference
void write_consistency_csv(std::ostream& out, const ConsistencyResult& result);
/// dt,mean_relative_difference,ratio_to_next
void write_consistency_summary(std::ostream& out, const ConsistencyResult& result);

/// Deterministic Taylor–Green vortex u₀ = (sin x₁ cos x₂, −cos x₁ sin x₂).
struct TaylorGreenSpec {
  int cutoff = 2;
  double nu = 0.01;
  double dt = 1e-3;
  double t_end = 5.0;
  /// Stop threshold as a multiple of the functional at t = 0 (infinite: never stop).
  double threshold_factor = std::numeric_limits<double>::infinity();
};

struct DecayResult {
  IntegrationResult run;
  double fitted_rate = 0.0;       ///< −slope of the least-squares line through ln ‖u‖²
  double initial_functional = 0.0;
  double max_functional_ratio = 0.0;  ///< largest functional over its t = 0 value
};

VectorField taylor_green_field(int cutoff);
DecayResult taylor_green(const TaylorGreenSpec& spec);

/// Near-inviscid run from a large random state; meant to exceed the blow-up threshold.
struct StressSpec {
  int cutoff = 4;
  double nu = 1e-6;
  double amplitude = 10.0;
  double dt = 1e-2;
  double t_end = 10.0;
  double threshold_factor = 10.0;
  std::uint64_t seed = 1;
};

DecayResult stress_test(const StressSpec& spec);

}  // namespace salt
