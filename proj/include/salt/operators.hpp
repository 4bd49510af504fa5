#pragma once

#include <array>
#include <optional>
#include <span>

#include "salt/field.hpp"

namespace salt {

/// f = 𝒫f + ∇g + c on the torus.
struct LerayDecomposition {
  VectorField solenoidal;     ///< divergence-free, zero-average
  VectorField gradient_part;  ///< curl-free, zero-average
  std::array<double, 3> constant_part{0.0, 0.0, 0.0};
};

/// Per mode k ≠ 0: (𝒫f)_k = f_k − (k·f_k) k/|k|²; the k = 0 amplitude becomes the constant part.
LerayDecomposition leray_project(const VectorField& f);

/// Shorthand for leray_project(f).solenoidal.
VectorField leray(const VectorField& f);

/// Throws ContractViolation unless f is divergence-free with zero mean (relative tolerance 1e-10).
void require_solenoidal(const VectorField& f, const char* what);

/// A = −𝒫Δ on divergence-free zero-average fields: multiplies mode k by |k|².
VectorField stokes_apply(const VectorField& f);

/// A^s for half-integer s in [0, 3]: multiplies mode k by |k|^{2s}.
VectorField stokes_power(const VectorField& f, double s);

/// ⟨f, g⟩_m = ⟨A^{m/2} f, A^{m/2} g⟩, computed directly as (2π)^N Σ |k|^{2m} f_k·conj(g_k).
double m_inner(const VectorField& f, const VectorField& g, int m);
inline double m_norm_sq(const VectorField& f, int m) { return m_inner(f, f, m); }

/// ℒ_f g = Σ_j f^j ∂_j g, exact at band K_f + K_g unless truncated.
VectorField nonlinear_L(const VectorField& f, const VectorField& g,
                        std::optional<int> truncate_to = std::nullopt);

/// 𝒯_ξ f = Σ_j f^j ∇ξ^j (Jacobian transpose of ξ applied to f).
VectorField transport_T(const VectorField& xi, const VectorField& f);
/// L²-adjoint of 𝒯_ξ: (𝒯*_ξ g)^j = Σ_l g^l ∂_l ξ^j = ℒ_g ξ.
VectorField transport_T_star(const VectorField& xi, const VectorField& g);

/// SALT operator B_ξ = ℒ_ξ + 𝒯_ξ.
VectorField salt_B(const VectorField& xi, const VectorField& f);
/// Adjoint B*_ξ = −ℒ_ξ + 𝒯*_ξ.
VectorField salt_B_star(const VectorField& xi, const VectorField& g);

/// [Δ, B_ξ] f = Δ(B_ξ f) − B_ξ(Δ f), evaluated directly.
VectorField commutator_delta_B(const VectorField& xi, const VectorField& f);

/// Closed form Σ_{k,j} (∂_k²ξ^j ∂_j f + 2∂_kξ^j ∂_k∂_j f + 2∂_k f^j ∂_k∇ξ^j + f^j ∂_k²∇ξ^j),
/// assembled from scalar products independently of salt_B.
VectorField closed_form_commutator(const VectorField& xi, const VectorField& f);

/// ½ Σ_i 𝒫 B_i² f, with B_i² evaluated at full band and truncated once to f's cutoff.
VectorField ito_correction(std::span<const VectorField> xis, const VectorField& f);

/// ½ Σ_i (𝒫B_i)(𝒫B_i) f, the other association order, truncated to f's cutoff.
VectorField ito_correction_composed(std::span<const VectorField> xis, const VectorField& f);

}  // namespace salt
