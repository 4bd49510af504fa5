#pragma once

#include <cstdint>
#include <initializer_list>

#include "salt/field.hpp"

namespace salt {

/// Counter-based generator: every draw is a pure function of its key, so draws can be
/// generated in any order and adding noise columns or modes never perturbs existing ones.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::initializer_list<std::uint64_t> key) const;
  /// Uniform in the open interval (0, 1).
  double uniform(std::initializer_list<std::uint64_t> key) const;
  /// Standard normal via Box–Muller on two keyed uniforms.
  double normal(std::initializer_list<std::uint64_t> key) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Stream tags keep the key spaces of unrelated consumers disjoint.
enum class RngStream : std::uint64_t {
  kNoise = 0x4e4f495345ull,
  kField = 0x4649454c44ull,
  kCorrelation = 0x434f5252ull,
  kScale = 0x5343414c45ull,
};

enum class FieldKind { kGeneral, kDivergenceFree, kGradient };

/// Seeded random real field with spectrum |c_k| ~ (1 + |k|²)^{-decay/2}.
///
/// Each mode is keyed by (seed, member, k, component), so the field at cutoff K is the
/// restriction of the field at any larger cutoff. Divergence-free fields are Leray
/// projected per mode and have zero mean; gradient fields are ∇ of a random scalar.
struct RandomFieldSpec {
  int dim = 2;
  int cutoff = 4;
  FieldKind kind = FieldKind::kDivergenceFree;
  double decay = 6.0;
  std::uint64_t seed = 1;
  std::uint64_t member = 0;
};

VectorField random_field(const RandomFieldSpec& spec);

/// Scalar analogue of random_field (the mean mode is kept).
ScalarField random_scalar(int dim, int cutoff, std::uint64_t seed, std::uint64_t member, double decay = 6.0);

}  // namespace salt
