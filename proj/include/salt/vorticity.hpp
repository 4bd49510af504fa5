#pragma once

#include "salt/field.hpp"

namespace salt {

/// curl f = (∂₂f³ − ∂₃f², ∂₃f¹ − ∂₁f³, ∂₁f² − ∂₂f¹). Three dimensions only.
VectorField curl(const VectorField& f);

/// Vorticity nonlinearity ℒ_f g − ℒ_g f at extended band.
VectorField vort_L(const VectorField& f, const VectorField& w);

/// Torus Biot–Savart: u_k = i k × w_k / |k|², u_0 = 0. Requires w divergence-free with zero mean.
VectorField biot_savart(const VectorField& w);

}  // namespace salt
