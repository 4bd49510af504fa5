#include "salt/vorticity.hpp"

#include "salt/operators.hpp"
#include "salt/spectral.hpp"

namespace salt {

namespace {

void require_3d(const VectorField& f, const char* what) {
  if (f.dim() != 3) throw ArgumentError(std::string(what) + " is defined for N = 3 only");
}

}  // namespace

VectorField curl(const VectorField& f) {
  require_3d(f, "curl");
  std::vector<ScalarField> comps;
  comps.push_back(partial_derivative(f[2], 2) - partial_derivative(f[1], 3));
  comps.push_back(partial_derivative(f[0], 3) - partial_derivative(f[2], 1));
  comps.push_back(partial_derivative(f[1], 1) - partial_derivative(f[0], 2));
  return VectorField(std::move(comps), {.zero_average = true, .divergence_free = true});
}

VectorField vort_L(const VectorField& f, const VectorField& w) {
  require_3d(f, "vort_L");
  require_3d(w, "vort_L");
  return nonlinear_L(f, w) - nonlinear_L(w, f);
}

VectorField biot_savart(const VectorField& w) {
  require_3d(w, "biot_savart");
  require_solenoidal(w, "biot_savart");
  VectorField u(3, w.cutoff(), {.zero_average = true, .divergence_free = true});
  const cplx i_unit(0.0, 1.0);
  for (std::size_t idx = 0; idx < w[0].size(); ++idx) {
    const WaveVector k = w[0].wave(idx);
    const long k2 = norm_sq(k);
    if (k2 == 0) continue;
    const cplx w1 = w[0].coeffs()[idx], w2 = w[1].coeffs()[idx], w3 = w[2].coeffs()[idx];
    const double kx = k[0], ky = k[1], kz = k[2];
    const cplx scale = i_unit / static_cast<double>(k2);
    u[0].coeffs()[idx] = scale * (ky * w3 - kz * w2);
    u[1].coeffs()[idx] = scale * (kz * w1 - kx * w3);
    u[2].coeffs()[idx] = scale * (kx * w2 - ky * w1);
  }
  return u;
}

}  // namespace salt
