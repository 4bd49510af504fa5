#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "salt/field.hpp"
#include "salt/grid.hpp"

namespace salt {

enum class CheckKind { kIdentity, kInequality };

/// One line of the lemma report. Identities pass when residual ≤ tolerance; inequalities
/// report their worst normalized slack and pass when it is ≥ −tolerance.
struct LemmaEntry {
  std::string name;
  CheckKind kind = CheckKind::kIdentity;
  int dim = 2;
  int cutoff = 4;
  double value = 0.0;  ///< max relative residual, or min normalized slack
  double tolerance = 0.0;
  bool passed = true;
};

struct LemmaReport {
  std::vector<LemmaEntry> entries;
  bool passed() const;
  void write_csv(std::ostream& out, bool header = true) const;
  void write_summary(std::ostream& out) const;
};

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kSlackTolerance = 1e-12;

struct LemmaSuiteOptions {
  std::uint64_t seed = 1;
  int dim = 2;
  int cutoff = 4;
  int trials = 3;
  /// Replace every ξ by the zero field; all B-related residuals must then vanish exactly.
  bool zero_xi = false;
};

/// Runs every identity of the operator calculus with two independent evaluation paths,
/// plus the Galerkin self-adjointness and tail-bound inequalities.
LemmaReport lemma_suite(const LemmaSuiteOptions& options);

class GalerkinBasis;

/// Rank n used by the tail checks: odd, so modes n−1 and n are the cos/sin pair of one
/// wave vector and share λ_n.
std::size_t tail_rank(const GalerkinBasis& basis);
/// (‖f‖₁²/λ_n − ‖(I−𝒫_n)f‖²)/‖f‖² for a seeded random divergence-free f on the full cube basis.
double tail_bound_slack(int dim, int cutoff, std::uint64_t seed, std::uint64_t member = 0);
/// Relative gap between ‖(I−𝒫_n)a‖² and ‖a‖₁²/λ_n for the first discarded eigenmode a.
double tail_eigenmode_residual(int dim, int cutoff);

/// Second-order central differences of the grid samples of f along `axis` (1-based).
GridSample finite_difference_oracle(const ScalarField& f, int axis, int resolution);

}  // namespace salt
