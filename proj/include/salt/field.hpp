#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace salt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when an argument is outside the documented domain (bad axis, bad order, size mismatch).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operator receives a field outside the space it is defined on
/// (e.g. the Stokes operator on a field that is not divergence-free).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when numerical state is corrupt (NaN/Inf, broken symmetry).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice point of Z^N. Unused trailing entries are zero (N = 2 keeps k[2] == 0).
using WaveVector = std::array<int, 3>;

inline WaveVector negate(const WaveVector& k) { return {-k[0], -k[1], -k[2]}; }

inline long norm_sq(const WaveVector& k) {
  return static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1] +
         static_cast<long>(k[2]) * k[2];
}

/// (2π)^N, the torus volume.
double torus_volume(int dim);

/// Fourier coefficients of a real scalar field on [0,2π)^N, dense over the cube |k_j| <= K.
///
/// Storage is lexicographic in k with k_1 most significant, which is also the order
/// used by the snapshot format. Reality of the field is the Hermitian symmetry
/// c(-k) = conj(c(k)); every operation in this library preserves it.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int dim, int cutoff);

  int dim() const { return dim_; }
  int cutoff() const { return cutoff_; }
  int side() const { return 2 * cutoff_ + 1; }
  std::size_t size() const { return coeffs_.size(); }

  bool contains(const WaveVector& k) const;
  std::size_t index(const WaveVector& k) const;
  WaveVector wave(std::size_t index) const;

  cplx& operator[](const WaveVector& k) { return coeffs_[index(k)]; }
  const cplx& operator[](const WaveVector& k) const { return coeffs_[index(k)]; }
  /// Coefficient at k, zero if k lies outside the stored cube.
  cplx at(const WaveVector& k) const { return contains(k) ? coeffs_[index(k)] : cplx{}; }

  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  /// Zero-pads or truncates to a new cutoff.
  ScalarField resized(int cutoff) const;

  /// max_k |c(-k) - conj(c(k))|.
  double hermitian_defect() const;
  double max_abs() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

 private:
  int dim_ = 0;
  int cutoff_ = 0;
  std::vector<cplx> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Metadata flags; they record how a field was produced and are never trusted blindly
/// by operators that have a contract (those check the coefficients).
struct FieldFlags {
  bool zero_average = false;
  bool divergence_free = false;
};

/// N-tuple of scalar fields sharing (N, K). The carrier for u, w, ξ_i and test data.
class VectorField {
 public:
  VectorField() = default;
  VectorField(int dim, int cutoff, FieldFlags flags = {});
  explicit VectorField(std::vector<ScalarField> components, FieldFlags flags = {});

  int dim() const { return static_cast<int>(components_.size()); }
  int cutoff() const { return components_.empty() ? 0 : components_.front().cutoff(); }

  ScalarField& operator[](int c) { return components_[static_cast<std::size_t>(c)]; }
  const ScalarField& operator[](int c) const { return components_[static_cast<std::size_t>(c)]; }

  const FieldFlags& flags() const { return flags_; }
  FieldFlags& flags() { return flags_; }

  VectorField resized(int cutoff) const;
  double hermitian_defect() const;
  double max_abs() const;
  /// Largest |k · f_k| relative to the largest |k||f_k|; 0 for the zero field.
  double divergence_defect() const;
  bool is_zero() const { return max_abs() == 0.0; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s);

 private:
  std::vector<ScalarField> components_;
  FieldFlags flags_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// ℓ² norm of the coefficient difference divided by the larger of the two coefficient norms.
/// Fields may have different cutoffs. Returns 0 when both are zero.
double relative_residual(const VectorField& a, const VectorField& b);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

}  // namespace salt
