#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "salt/diagnostics.hpp"
#include "salt/galerkin.hpp"

namespace salt {

/// Brownian increments ΔW^i_s ~ N(0, dt), steps × M, row-major.
///
/// Draw (s, i) is keyed by (seed, i, s), so column i never depends on M or on other columns.
struct NoisePath {
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t columns = 0;  ///< M
  std::vector<double> increments;

  std::span<const double> row(std::size_t step) const {
    return std::span<const double>(increments).subspan(step * columns, columns);
  }
  double at(std::size_t step, std::size_t i) const { return increments[step * columns + i]; }

  static NoisePath generate(std::uint64_t seed, double dt, std::size_t steps, std::size_t columns);
  /// Sums `factor` consecutive increments: the same Brownian path sampled at dt·factor.
  NoisePath coarsened(std::size_t factor) const;
};

class NoisePathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header "SALTPATH1", u64 seed, f64 dt, u64 steps, u64 M, then steps·M f64 increments (little-endian).
void write_noise_path(std::ostream& out, const NoisePath& path);
NoisePath read_noise_path(std::istream& in);
void save_noise_path(const std::filesystem::path& file, const NoisePath& path);
NoisePath load_noise_path(const std::filesystem::path& file);

enum class Scheme { kEulerMaruyama, kHeunStratonovich, kImplicitMidpointTransport };

const char* scheme_name(Scheme scheme);

struct IntegratorConfig {
  Scheme scheme = Scheme::kEulerMaruyama;
  double dt = 1e-3;
  double t_end = 1.0;
  double blowup_threshold = std::numeric_limits<double>::infinity();
  /// Keep every stride-th state in the trajectory (the final state is always kept).
  std::size_t store_stride = 1;

  std::size_t step_count() const;
  void validate() const;
};

/// x + a(x) dt + Σ_i b_i(x) ΔW^i for an Itô form.
Coords euler_maruyama_step(std::span<const double> x, const GalerkinSystem& system,
                           std::span<const double> dw, double dt);

/// Heun predictor-corrector for the Stratonovich form.
Coords heun_stratonovich_step(std::span<const double> x, const GalerkinSystem& system,
                              std::span<const double> dw, double dt);

/// Pure transport dx = −Σ_i 𝒫_nℒ_{ξ_i} x ∘ dW^i by the implicit midpoint rule.
///
/// The Galerkin matrices L_i of 𝒫_nℒ_{ξ_i} are antisymmetric, so each step is a Cayley
/// transform and ‖x‖ is preserved up to round-off.
class TransportMidpoint {
 public:
  TransportMidpoint(const GalerkinBasis& basis, std::span<const VectorField> xis);

  std::size_t size() const { return n_; }
  std::size_t noise_count() const { return matrices_.size(); }
  /// Row-major n × n Galerkin matrix of 𝒫_nℒ_{ξ_i}.
  const std::vector<double>& matrix(std::size_t i) const { return matrices_.at(i); }
  /// max |L + Lᵀ| over all entries and all i.
  double antisymmetry_defect() const;

  Coords step(std::span<const double> x, std::span<const double> dw) const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> matrices_;
};

enum class Outcome { kCompleted, kStoppedBlowup, kOverflow };

const char* outcome_name(Outcome outcome);

struct IntegrationResult {
  std::vector<Coords> trajectory;  ///< stored states, starting with the initial one
  std::vector<double> times;       ///< time of each stored state
  std::vector<DiagnosticsRecord> diagnostics;  ///< one per step, plus t = 0
  Outcome outcome = Outcome::kCompleted;
  std::size_t steps_taken = 0;
  std::optional<std::size_t> overflow_step;  ///< step whose result was non-finite

  const Coords& final_state() const { return trajectory.back(); }
};

/// Steps from x0 until t_end or until the blow-up functional exceeds the threshold.
IntegrationResult integrate(std::span<const double> x0, const GalerkinSystem& system,
                            const IntegratorConfig& config, const NoisePath& path);

}  // namespace salt
