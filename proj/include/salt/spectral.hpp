#pragma once

#include <optional>
#include <vector>

#include "salt/field.hpp"
#include "salt/grid.hpp"

namespace salt {

/// Sobolev order m of W^{m,2} / W^{m,∞}; orders 0..4 are supported.
struct SobolevIndex {
  int m = 0;
};

inline constexpr int kMaxSobolevOrder = 4;

/// ∂_j f: the coefficient at k is multiplied by i k_j. Axis is 1-based (1..N).
ScalarField partial_derivative(const ScalarField& f, int axis);

/// Applies D^α with α a multi-index of length N.
ScalarField apply_multi_derivative(const ScalarField& f, const std::array<int, 3>& alpha);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// Exact product of band-limited fields. The result has cutoff K_f + K_g unless
/// `truncate_to` is given, in which case it is truncated (or zero-padded) afterwards.
ScalarField multiply(const ScalarField& f, const ScalarField& g,
                     std::optional<int> truncate_to = std::nullopt);

/// ⟨f, g⟩ over the torus via Parseval: (2π)^N Σ_k f_k · conj(g_k).
double l2_inner(const VectorField& f, const VectorField& g);
double l2_inner(const ScalarField& f, const ScalarField& g);

/// Σ_{|α| ≤ m} k^{2α}, the W^{m,2} Fourier weight.
double sobolev_weight(const WaveVector& k, int dim, int m);

/// W^{m,2} inner product Σ_{|α|≤m} ⟨D^α f, D^α g⟩.
double sobolev_inner(const VectorField& f, const VectorField& g, SobolevIndex m);
double sobolev_norm_sq(const VectorField& f, SobolevIndex m);

/// Grid estimate of ‖f‖_{W^{m,∞}} = max_{|α| ≤ m} ‖D^α f‖_{L^∞}, sampled at
/// R = max(4K+1, 64) unless a resolution is given. A lower bound on the true sup
/// that converges as R grows.
double sup_norm_estimate(const VectorField& f, int m, std::optional<int> resolution = std::nullopt);

/// All multi-indices of length `dim` with |α| ≤ m, graded by order then lexicographic.
std::vector<std::array<int, 3>> multi_indices(int dim, int m);

}  // namespace salt
