#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "salt/galerkin.hpp"

namespace salt {

/// Per-step norms of the state field and the running blow-up functional.
struct DiagnosticsRecord {
  double t = 0.0;
  double l2_sq = 0.0;
  double h1_sq = 0.0;
  double h2_sq = 0.0;
  double blowup_partial = 0.0;
};

/// ‖x‖², ‖x‖₁², ‖x‖₂² of the field with basis coordinates x (the basis is A-orthonormal up to λ).
DiagnosticsRecord state_norms(std::span<const double> coords, const GalerkinBasis& basis, double t);

/// Running sup_{s≤t} ‖u_s‖₁² + ∫₀ᵗ ‖u_s‖₂² ds, the integral by the trapezoid rule.
class BlowupMonitor {
 public:
  explicit BlowupMonitor(double threshold);

  /// Feeds the next sample (times must be nondecreasing) and returns the functional.
  double update(double t, double h1_sq, double h2_sq);
  double value() const { return sup_h1_ + integral_; }
  bool triggered() const { return value() > threshold_; }
  double threshold() const { return threshold_; }

 private:
  double threshold_;
  bool started_ = false;
  double last_t_ = 0.0;
  double last_h2_ = 0.0;
  double sup_h1_ = 0.0;
  double integral_ = 0.0;
};

/// Functional over a stored record sequence (recomputed, independent of the records' own column).
double blowup_functional(std::span<const DiagnosticsRecord> records);

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);

}  // namespace salt
