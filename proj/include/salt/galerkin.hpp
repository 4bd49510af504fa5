#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "salt/correlation.hpp"
#include "salt/field.hpp"

namespace salt {

enum class Parity { kCos, kSin };

/// Real Stokes eigenfunction a = c · p · cos(k·x) or c · p · sin(k·x) with c = sqrt(2/(2π)^N),
/// so that ⟨a_i, a_j⟩ = δ_ij in L².
struct StokesMode {
  std::size_t index = 0;  ///< 1-based rank
  WaveVector k{0, 0, 0};
  std::array<double, 3> polarization{0.0, 0.0, 0.0};
  int polarization_id = 0;
  Parity parity = Parity::kCos;
  double lambda = 0.0;
};

/// sqrt(2/(2π)^N).
double basis_normalization(int dim);

/// All real divergence-free modes with |k_j| ≤ K, sorted by λ, then k, then polarization, then cos/sin.
std::vector<StokesMode> enumerate_basis(int dim, int cutoff);

/// The first n modes of enumerate_basis(dim, cutoff), with coordinate maps.
class GalerkinBasis {
 public:
  GalerkinBasis(int dim, int cutoff, std::optional<std::size_t> n = std::nullopt);

  int dim() const { return dim_; }
  int cutoff() const { return cutoff_; }
  /// Smallest cube cutoff holding every retained mode; fields built by to_field use it.
  int field_cutoff() const { return field_cutoff_; }
  std::size_t size() const { return modes_.size(); }
  const std::vector<StokesMode>& modes() const { return modes_; }
  const StokesMode& mode(std::size_t i) const { return modes_.at(i); }

  VectorField to_field(std::span<const double> coords) const;
  /// Coordinates ⟨f, a_i⟩; modes of f outside the cube count as zero.
  std::vector<double> project(const VectorField& f) const;
  VectorField mode_field(std::size_t i) const;

  /// CSV: index, k components, polarization components, parity, lambda.
  void write_manifest(std::ostream& out) const;

 private:
  int dim_;
  int cutoff_;
  int field_cutoff_ = 0;
  std::vector<StokesMode> modes_;
};

/// 𝒫_n f for the first n modes of the basis.
VectorField project_Pn(const VectorField& f, std::size_t n, const GalerkinBasis& basis);

enum class EquationForm { kVelocityIto, kVelocityStrat, kVorticityIto };

const char* form_name(EquationForm form);

/// Finite-dimensional system on span{a_1..a_n}; immutable once built.
struct GalerkinSystem {
  GalerkinBasis basis;
  EquationForm form = EquationForm::kVelocityIto;
  double nu = 1.0;
  CorrelationSet correlations;

  GalerkinSystem(GalerkinBasis b, EquationForm f, double viscosity, CorrelationSet c);

  std::size_t noise_count() const { return correlations.size(); }
};

using Coords = std::vector<double>;

/// 𝒫_n[−𝒫ℒ_u u − νAu + ½Σ𝒫B_i²u].
Coords drift_velocity_ito(std::span<const double> state, const GalerkinSystem& system);
/// 𝒫_n[−𝒫ℒ_u u − νAu].
Coords drift_velocity_strat(std::span<const double> state, const GalerkinSystem& system);
/// −𝒫_n𝒫B_i u.
Coords diffusion_velocity(std::span<const double> state, const GalerkinSystem& system, std::size_t i);
/// 𝒫_n[−𝒫ℒ_u w − νAw + ½Σ𝒫ℒ_i²w], u = biot_savart(w), with ℒ the vorticity operator.
Coords drift_vorticity_ito(std::span<const double> state, const GalerkinSystem& system);
/// −𝒫_n𝒫ℒ_i w.
Coords diffusion_vorticity(std::span<const double> state, const GalerkinSystem& system, std::size_t i);

/// Dispatch on system.form.
Coords drift(std::span<const double> state, const GalerkinSystem& system);
Coords diffusion(std::span<const double> state, const GalerkinSystem& system, std::size_t i);

/// Throws IntegrityError if any coordinate is NaN or infinite.
void require_finite(std::span<const double> state, const char* what);

}  // namespace salt
