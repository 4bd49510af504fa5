#include "salt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salt/grid.hpp"
#include "salt/spectral.hpp"

namespace salt {

namespace {

// Coefficients of the three first-order bilinear building blocks, per output component l:
//   adv_ab: Σ_j a^j ∂_j b^l     (ℒ_a b)
//   adv_ba: Σ_j b^j ∂_j a^l     (ℒ_b a)
//   tr_ab:  Σ_j b^j ∂_l a^j     (𝒯_a b)
struct BilinearTerms {
  double adv_ab = 0.0;
  double adv_ba = 0.0;
  double tr_ab = 0.0;
};

VectorField bilinear(const VectorField& a, const VectorField& b, BilinearTerms t,
                     std::optional<int> truncate_to = std::nullopt) {
  if (a.dim() != b.dim()) throw ArgumentError("dimension mismatch in bilinear operator");
  const int n = a.dim();
  const int band = a.cutoff() + b.cutoff();
  const int r = alias_free_resolution(band);
  const auto nn = static_cast<std::size_t>(n);

  std::vector<GridSample> av, bv, da, db;  // da[j*n + l] = ∂_l a^j
  const bool need_b_vals = t.adv_ba != 0.0 || t.tr_ab != 0.0;
  const bool need_da = need_b_vals;
  if (t.adv_ab != 0.0) {
    for (int j = 0; j < n; ++j) av.push_back(to_grid(a[j], r));
    for (int j = 0; j < n; ++j)
      for (int l = 1; l <= n; ++l) db.push_back(to_grid(partial_derivative(b[j], l), r));
  }
  if (need_b_vals) {
    for (int j = 0; j < n; ++j) bv.push_back(to_grid(b[j], r));
  }
  if (need_da) {
    for (int j = 0; j < n; ++j)
      for (int l = 1; l <= n; ++l) da.push_back(to_grid(partial_derivative(a[j], l), r));
  }

  const int out_cutoff = truncate_to.value_or(band);
  std::vector<ScalarField> comps;
  GridSample acc;
  acc.dim = n;
  acc.resolution = r;
  for (std::size_t l = 0; l < nn; ++l) {
    const std::size_t points = av.empty() ? bv.front().values.size() : av.front().values.size();
    acc.values.assign(points, 0.0);
    for (std::size_t j = 0; j < nn; ++j) {
      if (t.adv_ab != 0.0) {
        const auto& x = av[j].values;
        const auto& y = db[l * nn + j].values;  // ∂_j b^l
        for (std::size_t p = 0; p < points; ++p) acc.values[p] += t.adv_ab * x[p] * y[p];
      }
      if (t.adv_ba != 0.0) {
        const auto& x = bv[j].values;
        const auto& y = da[l * nn + j].values;  // ∂_j a^l
        for (std::size_t p = 0; p < points; ++p) acc.values[p] += t.adv_ba * x[p] * y[p];
      }
      if (t.tr_ab != 0.0) {
        const auto& x = bv[j].values;
        const auto& y = da[j * nn + l].values;  // ∂_l a^j
        for (std::size_t p = 0; p < points; ++p) acc.values[p] += t.tr_ab * x[p] * y[p];
      }
    }
    comps.push_back(from_grid(acc, std::min(out_cutoff, band)));
    if (out_cutoff > band) comps.back() = comps.back().resized(out_cutoff);
  }
  return VectorField(std::move(comps));
}

double relative_mean(const VectorField& f) {
  double mean = 0.0;
  const WaveVector zero{0, 0, 0};
  for (int c = 0; c < f.dim(); ++c) mean = std::max(mean, std::abs(f[c][zero]));
  const double scale = f.max_abs();
  return scale == 0.0 ? 0.0 : mean / scale;
}

VectorField scale_modes(const VectorField& f, double power) {
  VectorField out = f;
  for (int c = 0; c < out.dim(); ++c) {
    auto coeffs = out[c].coeffs();
    for (std::size_t i = 0; i < out[c].size(); ++i) {
      const double k2 = static_cast<double>(norm_sq(out[c].wave(i)));
      coeffs[i] *= k2 == 0.0 ? 0.0 : std::pow(k2, power);
    }
  }
  return out;
}

}  // namespace

LerayDecomposition leray_project(const VectorField& f) {
  const int n = f.dim();
  LerayDecomposition out{VectorField(n, f.cutoff(), {.zero_average = true, .divergence_free = true}),
                         VectorField(n, f.cutoff(), {.zero_average = true, .divergence_free = false}),
                         {0.0, 0.0, 0.0}};
  const ScalarField& first = f[0];
  for (std::size_t i = 0; i < first.size(); ++i) {
    const WaveVector k = first.wave(i);
    const long k2 = norm_sq(k);
    if (k2 == 0) {
      for (int c = 0; c < n; ++c) out.constant_part[static_cast<std::size_t>(c)] = f[c].coeffs()[i].real();
      continue;
    }
    cplx kf{};
    for (int c = 0; c < n; ++c) kf += static_cast<double>(k[c]) * f[c].coeffs()[i];
    const cplx scale = kf / static_cast<double>(k2);
    for (int c = 0; c < n; ++c) {
      const cplx grad = scale * static_cast<double>(k[c]);
      out.gradient_part[c].coeffs()[i] = grad;
      out.solenoidal[c].coeffs()[i] = f[c].coeffs()[i] - grad;
    }
  }
  return out;
}

VectorField leray(const VectorField& f) { return leray_project(f).solenoidal; }

void require_solenoidal(const VectorField& f, const char* what) {
  constexpr double kTolerance = 1e-10;
  const double div = f.divergence_defect();
  const double mean = relative_mean(f);
  if (div > kTolerance || mean > kTolerance)
    throw ContractViolation(std::string(what) + ": input must be divergence-free with zero average (div defect " +
                            std::to_string(div) + ", mean defect " + std::to_string(mean) + ")");
}

VectorField stokes_apply(const VectorField& f) {
  require_solenoidal(f, "stokes_apply");
  VectorField out = scale_modes(f, 1.0);
  out.flags() = {.zero_average = true, .divergence_free = true};
  return out;
}

VectorField stokes_power(const VectorField& f, double s) {
  const double twice = 2.0 * s;
  if (s < 0.0 || s > 3.0 || twice != std::floor(twice))
    throw ArgumentError("stokes_power expects a half-integer exponent in [0, 3]");
  require_solenoidal(f, "stokes_power");
  if (s == 0.0) return f;
  VectorField out = scale_modes(f, s);
  out.flags() = {.zero_average = true, .divergence_free = true};
  return out;
}

double m_inner(const VectorField& f, const VectorField& g, int m) {
  if (m < 0 || m > kMaxSobolevOrder) throw ArgumentError("m_inner order out of range");
  require_solenoidal(f, "m_inner");
  require_solenoidal(g, "m_inner");
  if (f.dim() != g.dim()) throw ArgumentError("dimension mismatch in m_inner");
  const int cutoff = std::min(f.cutoff(), g.cutoff());
  std::vector<double> terms;
  const ScalarField probe(f.dim(), cutoff);
  for (int c = 0; c < f.dim(); ++c) {
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const WaveVector k = probe.wave(i);
      const cplx a = f[c][k];
      const cplx b = g[c][k];
      terms.push_back(std::pow(static_cast<double>(norm_sq(k)), m) * (a.real() * b.real() + a.imag() * b.imag()));
    }
  }
  return torus_volume(f.dim()) * pairwise_sum(terms);
}

VectorField nonlinear_L(const VectorField& f, const VectorField& g, std::optional<int> truncate_to) {
  if (truncate_to && *truncate_to < 0) throw ArgumentError("truncation cutoff must be non-negative");
  return bilinear(f, g, {.adv_ab = 1.0}, truncate_to);
}

VectorField transport_T(const VectorField& xi, const VectorField& f) {
  return bilinear(xi, f, {.tr_ab = 1.0});
}

VectorField transport_T_star(const VectorField& xi, const VectorField& g) {
  return bilinear(xi, g, {.adv_ba = 1.0});
}

VectorField salt_B(const VectorField& xi, const VectorField& f) {
  return bilinear(xi, f, {.adv_ab = 1.0, .tr_ab = 1.0});
}

VectorField salt_B_star(const VectorField& xi, const VectorField& g) {
  return bilinear(xi, g, {.adv_ab = -1.0, .adv_ba = 1.0});
}

VectorField commutator_delta_B(const VectorField& xi, const VectorField& f) {
  return laplacian(salt_B(xi, f)) - salt_B(xi, laplacian(f));
}

VectorField closed_form_commutator(const VectorField& xi, const VectorField& f) {
  if (xi.dim() != f.dim()) throw ArgumentError("dimension mismatch in commutator");
  const int n = xi.dim();
  const int band = xi.cutoff() + f.cutoff();
  std::vector<ScalarField> comps;
  for (int l = 1; l <= n; ++l) {
    ScalarField acc(n, band);
    for (int j = 1; j <= n; ++j) {
      const ScalarField lap_xi = laplacian(xi[j - 1]);
      acc += multiply(lap_xi, partial_derivative(f[l - 1], j));
      acc += multiply(f[j - 1], partial_derivative(lap_xi, l));
      for (int k = 1; k <= n; ++k) {
        const ScalarField dk_xi = partial_derivative(xi[j - 1], k);
        acc += 2.0 * multiply(dk_xi, partial_derivative(partial_derivative(f[l - 1], k), j));
        acc += 2.0 * multiply(partial_derivative(f[j - 1], k), partial_derivative(dk_xi, l));
      }
    }
    comps.push_back(std::move(acc));
  }
  return VectorField(std::move(comps));
}

VectorField ito_correction(std::span<const VectorField> xis, const VectorField& f) {
  VectorField total(f.dim(), f.cutoff());
  for (const VectorField& xi : xis) total += leray(salt_B(xi, salt_B(xi, f))).resized(f.cutoff());
  total *= 0.5;
  total.flags() = {.zero_average = true, .divergence_free = true};
  return total;
}

VectorField ito_correction_composed(std::span<const VectorField> xis, const VectorField& f) {
  VectorField total(f.dim(), f.cutoff());
  for (const VectorField& xi : xis) total += leray(salt_B(xi, leray(salt_B(xi, f)))).resized(f.cutoff());
  total *= 0.5;
  total.flags() = {.zero_average = true, .divergence_free = true};
  return total;
}

}  // namespace salt
