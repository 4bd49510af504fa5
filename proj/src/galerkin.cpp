#include "salt/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <string>

#include "salt/operators.hpp"
#include "salt/vorticity.hpp"

namespace salt {

namespace {

bool is_positive_half(const WaveVector& k) {
  for (int v : k)
    if (v != 0) return v > 0;
  return false;
}

std::vector<std::array<double, 3>> polarizations(const WaveVector& k, int dim) {
  const double len = std::sqrt(static_cast<double>(norm_sq(k)));
  if (dim == 2) return {{-k[1] / len, k[0] / len, 0.0}};
  int axis = 0;
  for (int j = 1; j < 3; ++j)
    if (std::abs(k[j]) < std::abs(k[axis])) axis = j;
  std::array<double, 3> r{0.0, 0.0, 0.0};
  r[static_cast<std::size_t>(axis)] = 1.0;
  const std::array<double, 3> kd{static_cast<double>(k[0]), static_cast<double>(k[1]), static_cast<double>(k[2])};
  const auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto e1 = cross(kd, r);
  const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& v : e1) v /= n1;
  auto e2 = cross(kd, e1);
  for (double& v : e2) v /= len;
  return {e1, e2};
}

cplx dot(const VectorField& f, const WaveVector& k, const std::array<double, 3>& p) {
  cplx s{};
  for (int c = 0; c < f.dim(); ++c) s += f[c].at(k) * p[static_cast<std::size_t>(c)];
  return s;
}

VectorField checked_field(std::span<const double> state, const GalerkinSystem& system) {
  if (state.size() != system.basis.size())
    throw ArgumentError("state length " + std::to_string(state.size()) + " does not match basis size " +
                        std::to_string(system.basis.size()));
  require_finite(state, "state");
  return system.basis.to_field(state);
}

void require_form(const GalerkinSystem& system, std::initializer_list<EquationForm> allowed, const char* what) {
  for (EquationForm f : allowed)
    if (system.form == f) return;
  throw ArgumentError(std::string(what) + " does not apply to form " + form_name(system.form));
}

const VectorField& xi_at(const GalerkinSystem& system, std::size_t i) {
  if (i >= system.correlations.size())
    throw ArgumentError("noise index " + std::to_string(i) + " out of range (M = " +
                        std::to_string(system.correlations.size()) + ")");
  return system.correlations.xis[i];
}

Coords velocity_drift(const VectorField& u, const GalerkinSystem& system, bool ito) {
  const int kc = system.basis.field_cutoff();
  VectorField rhs = -1.0 * leray(nonlinear_L(u, u, kc));
  rhs -= system.nu * stokes_apply(u);
  if (ito && !system.correlations.empty()) rhs += ito_correction(system.correlations.xis, u);
  return system.basis.project(rhs);
}

}  // namespace

double basis_normalization(int dim) { return std::sqrt(2.0 / torus_volume(dim)); }

std::vector<StokesMode> enumerate_basis(int dim, int cutoff) {
  if (dim != 2 && dim != 3) throw ArgumentError("basis dimension must be 2 or 3");
  if (cutoff < 1) throw ArgumentError("basis cutoff must be at least 1");
  std::vector<StokesMode> modes;
  const int zmax = dim == 3 ? cutoff : 0;
  for (int a = -cutoff; a <= cutoff; ++a)
    for (int b = -cutoff; b <= cutoff; ++b)
      for (int c = -zmax; c <= zmax; ++c) {
        const WaveVector k{a, b, c};
        if (!is_positive_half(k)) continue;
        const auto pols = polarizations(k, dim);
        for (std::size_t p = 0; p < pols.size(); ++p)
          for (Parity parity : {Parity::kCos, Parity::kSin})
            modes.push_back({0, k, pols[p], static_cast<int>(p), parity, static_cast<double>(norm_sq(k))});
      }
  std::stable_sort(modes.begin(), modes.end(), [](const StokesMode& x, const StokesMode& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    if (x.k != y.k) return x.k < y.k;
    if (x.polarization_id != y.polarization_id) return x.polarization_id < y.polarization_id;
    return x.parity == Parity::kCos && y.parity == Parity::kSin;
  });
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i].index = i + 1;
  return modes;
}

GalerkinBasis::GalerkinBasis(int dim, int cutoff, std::optional<std::size_t> n)
    : dim_(dim), cutoff_(cutoff), modes_(enumerate_basis(dim, cutoff)) {
  if (n) {
    if (*n < 1 || *n > modes_.size())
      throw ArgumentError("Galerkin rank n = " + std::to_string(*n) + " outside [1, " +
                          std::to_string(modes_.size()) + "]");
    modes_.resize(*n);
  }
  for (const StokesMode& m : modes_)
    for (int v : m.k) field_cutoff_ = std::max(field_cutoff_, std::abs(v));
}

VectorField GalerkinBasis::to_field(std::span<const double> coords) const {
  if (coords.size() != modes_.size()) throw ArgumentError("coordinate vector has wrong length");
  const double c = basis_normalization(dim_);
  VectorField f(dim_, field_cutoff_, {.zero_average = true, .divergence_free = true});
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const StokesMode& m = modes_[i];
    const cplx amp = m.parity == Parity::kCos ? cplx(0.5 * c * coords[i], 0.0) : cplx(0.0, -0.5 * c * coords[i]);
    for (int comp = 0; comp < dim_; ++comp) {
      const cplx v = amp * m.polarization[static_cast<std::size_t>(comp)];
      f[comp][m.k] += v;
      f[comp][negate(m.k)] += std::conj(v);
    }
  }
  return f;
}

std::vector<double> GalerkinBasis::project(const VectorField& f) const {
  if (f.dim() != dim_) throw ArgumentError("projection dimension mismatch");
  const double scale = basis_normalization(dim_) * torus_volume(dim_);
  std::vector<double> out(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const StokesMode& m = modes_[i];
    const cplx s = dot(f, m.k, m.polarization);
    out[i] = m.parity == Parity::kCos ? scale * s.real() : -scale * s.imag();
  }
  return out;
}

VectorField GalerkinBasis::mode_field(std::size_t i) const {
  std::vector<double> e(modes_.size(), 0.0);
  e.at(i) = 1.0;
  return to_field(e);
}

void GalerkinBasis::write_manifest(std::ostream& out) const {
  out << "index,k1,k2" << (dim_ == 3 ? ",k3" : "") << ",p1,p2" << (dim_ == 3 ? ",p3" : "") << ",parity,lambda\n";
  out << std::setprecision(17);
  for (const StokesMode& m : modes_) {
    out << m.index;
    for (int j = 0; j < dim_; ++j) out << ',' << m.k[static_cast<std::size_t>(j)];
    for (int j = 0; j < dim_; ++j) out << ',' << m.polarization[static_cast<std::size_t>(j)];
    out << ',' << (m.parity == Parity::kCos ? "cos" : "sin") << ',' << m.lambda << '\n';
  }
}

VectorField project_Pn(const VectorField& f, std::size_t n, const GalerkinBasis& basis) {
  if (n < 1 || n > basis.size()) throw ArgumentError("project_Pn: n out of range");
  std::vector<double> coords = basis.project(f);
  std::fill(coords.begin() + static_cast<std::ptrdiff_t>(n), coords.end(), 0.0);
  return basis.to_field(coords);
}

const char* form_name(EquationForm form) {
  switch (form) {
    case EquationForm::kVelocityIto: return "velocity-ito";
    case EquationForm::kVelocityStrat: return "velocity-strat";
    case EquationForm::kVorticityIto: return "vorticity-ito";
  }
  return "unknown";
}

GalerkinSystem::GalerkinSystem(GalerkinBasis b, EquationForm f, double viscosity, CorrelationSet c)
    : basis(std::move(b)), form(f), nu(viscosity), correlations(std::move(c)) {
  if (!(nu >= 0.0)) throw ArgumentError("viscosity must be non-negative");
  if (form == EquationForm::kVorticityIto && basis.dim() != 3)
    throw ArgumentError("vorticity form requires N = 3");
  for (const VectorField& xi : correlations.xis)
    if (xi.dim() != basis.dim()) throw ArgumentError("correlation field dimension does not match the basis");
}

void require_finite(std::span<const double> state, const char* what) {
  for (double v : state)
    if (!std::isfinite(v)) throw IntegrityError(std::string(what) + " contains a non-finite value");
}

Coords drift_velocity_ito(std::span<const double> state, const GalerkinSystem& system) {
  require_form(system, {EquationForm::kVelocityIto}, "drift_velocity_ito");
  return velocity_drift(checked_field(state, system), system, true);
}

Coords drift_velocity_strat(std::span<const double> state, const GalerkinSystem& system) {
  require_form(system, {EquationForm::kVelocityStrat}, "drift_velocity_strat");
  return velocity_drift(checked_field(state, system), system, false);
}

Coords diffusion_velocity(std::span<const double> state, const GalerkinSystem& system, std::size_t i) {
  require_form(system, {EquationForm::kVelocityIto, EquationForm::kVelocityStrat}, "diffusion_velocity");
  const VectorField& xi = xi_at(system, i);
  const VectorField u = checked_field(state, system);
  return system.basis.project(-1.0 * leray(salt_B(xi, u)));
}

Coords drift_vorticity_ito(std::span<const double> state, const GalerkinSystem& system) {
  require_form(system, {EquationForm::kVorticityIto}, "drift_vorticity_ito");
  const VectorField w = checked_field(state, system);
  const int kc = system.basis.field_cutoff();
  const VectorField u = biot_savart(w);
  VectorField rhs = -1.0 * leray(vort_L(u, w).resized(kc));
  rhs -= system.nu * stokes_apply(w);
  if (!system.correlations.empty()) {
    VectorField corr(3, kc);
    for (const VectorField& xi : system.correlations.xis) corr += leray(vort_L(xi, vort_L(xi, w))).resized(kc);
    rhs += 0.5 * corr;
  }
  return system.basis.project(rhs);
}

Coords diffusion_vorticity(std::span<const double> state, const GalerkinSystem& system, std::size_t i) {
  require_form(system, {EquationForm::kVorticityIto}, "diffusion_vorticity");
  const VectorField& xi = xi_at(system, i);
  const VectorField w = checked_field(state, system);
  return system.basis.project(-1.0 * leray(vort_L(xi, w)));
}

Coords drift(std::span<const double> state, const GalerkinSystem& system) {
  switch (system.form) {
    case EquationForm::kVelocityIto: return drift_velocity_ito(state, system);
    case EquationForm::kVelocityStrat: return drift_velocity_strat(state, system);
    case EquationForm::kVorticityIto: return drift_vorticity_ito(state, system);
  }
  throw ArgumentError("unknown equation form");
}

Coords diffusion(std::span<const double> state, const GalerkinSystem& system, std::size_t i) {
  return system.form == EquationForm::kVorticityIto ? diffusion_vorticity(state, system, i)
                                                    : diffusion_velocity(state, system, i);
}

}  // namespace salt
