#include "salt/noise.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>

#include "salt/operators.hpp"
#include "salt/random.hpp"

namespace salt {

namespace {

constexpr std::array<char, 9> kPathMagic{'S', 'A', 'L', 'T', 'P', 'A', 'T', 'H', '1'};

static_assert(std::endian::native == std::endian::little, "noise path IO assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw NoisePathError("truncated noise path file");
  return value;
}

void axpy(Coords& y, double a, std::span<const double> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

void require_dw(const GalerkinSystem& system, std::span<const double> dw) {
  if (dw.size() < system.noise_count())
    throw ArgumentError("increment row has " + std::to_string(dw.size()) + " entries, system needs " +
                        std::to_string(system.noise_count()));
}

}  // namespace

NoisePath NoisePath::generate(std::uint64_t seed, double dt, std::size_t steps, std::size_t columns) {
  if (!(dt > 0.0)) throw ArgumentError("noise path dt must be positive");
  NoisePath path{seed, dt, steps, columns, std::vector<double>(steps * columns)};
  const CounterRng rng(seed);
  const double sd = std::sqrt(dt);
  const auto tag = static_cast<std::uint64_t>(RngStream::kNoise);
  for (std::size_t s = 0; s < steps; ++s)
    for (std::size_t i = 0; i < columns; ++i) path.increments[s * columns + i] = sd * rng.normal({tag, i, s});
  return path;
}

NoisePath NoisePath::coarsened(std::size_t factor) const {
  if (factor < 1) throw ArgumentError("coarsening factor must be at least 1");
  if (steps % factor != 0) throw ArgumentError("coarsening factor must divide the step count");
  NoisePath out{seed, dt * static_cast<double>(factor), steps / factor, columns, {}};
  out.increments.assign(out.steps * columns, 0.0);
  for (std::size_t s = 0; s < out.steps; ++s)
    for (std::size_t i = 0; i < columns; ++i) {
      double sum = 0.0;
      for (std::size_t f = 0; f < factor; ++f) sum += at(s * factor + f, i);
      out.increments[s * columns + i] = sum;
    }
  return out;
}

void write_noise_path(std::ostream& out, const NoisePath& path) {
  out.write(kPathMagic.data(), kPathMagic.size());
  put<std::uint64_t>(out, path.seed);
  put<double>(out, path.dt);
  put<std::uint64_t>(out, path.steps);
  put<std::uint64_t>(out, path.columns);
  for (double v : path.increments) put<double>(out, v);
  if (!out) throw NoisePathError("failed writing noise path");
}

NoisePath read_noise_path(std::istream& in) {
  std::array<char, 9> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kPathMagic) throw NoisePathError("bad noise path magic");
  NoisePath path;
  path.seed = get<std::uint64_t>(in);
  path.dt = get<double>(in);
  path.steps = get<std::uint64_t>(in);
  path.columns = get<std::uint64_t>(in);
  if (!(path.dt > 0.0)) throw NoisePathError("noise path dt must be positive");
  if (path.columns > 0 && path.steps > (std::size_t{1} << 40) / path.columns)
    throw NoisePathError("noise path dimensions implausibly large");
  path.increments.resize(path.steps * path.columns);
  for (double& v : path.increments) v = get<double>(in);
  return path;
}

void save_noise_path(const std::filesystem::path& file, const NoisePath& path) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw NoisePathError("cannot open " + file.string() + " for writing");
  write_noise_path(out, path);
}

NoisePath load_noise_path(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw NoisePathError("cannot open " + file.string());
  return read_noise_path(in);
}

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kEulerMaruyama: return "euler-maruyama";
    case Scheme::kHeunStratonovich: return "heun-stratonovich";
    case Scheme::kImplicitMidpointTransport: return "implicit-midpoint-transport";
  }
  return "unknown";
}

std::size_t IntegratorConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw ArgumentError("dt must be positive");
  if (!(t_end >= dt)) throw ArgumentError("t_end must be at least dt");
  if (!(blowup_threshold > 0.0)) throw ArgumentError("blow-up threshold must be positive");
  if (store_stride < 1) throw ArgumentError("store stride must be at least 1");
}

Coords euler_maruyama_step(std::span<const double> x, const GalerkinSystem& system, std::span<const double> dw,
                           double dt) {
  if (system.form == EquationForm::kVelocityStrat)
    throw ArgumentError("Euler-Maruyama integrates an Ito form");
  require_dw(system, dw);
  Coords next(x.begin(), x.end());
  axpy(next, dt, drift(x, system));
  for (std::size_t i = 0; i < system.noise_count(); ++i)
    if (dw[i] != 0.0) axpy(next, dw[i], diffusion(x, system, i));
  return next;
}

Coords heun_stratonovich_step(std::span<const double> x, const GalerkinSystem& system, std::span<const double> dw,
                              double dt) {
  if (system.form != EquationForm::kVelocityStrat)
    throw ArgumentError("Heun integrates the Stratonovich form");
  require_dw(system, dw);
  const Coords a0 = drift(x, system);
  std::vector<Coords> b0;
  Coords pred(x.begin(), x.end());
  axpy(pred, dt, a0);
  for (std::size_t i = 0; i < system.noise_count(); ++i) {
    b0.push_back(diffusion(x, system, i));
    axpy(pred, dw[i], b0.back());
  }
  if (!all_finite(pred)) {
    Coords bad(x.size(), std::numeric_limits<double>::quiet_NaN());
    return bad;
  }
  const Coords a1 = drift(pred, system);
  Coords next(x.begin(), x.end());
  axpy(next, 0.5 * dt, a0);
  axpy(next, 0.5 * dt, a1);
  for (std::size_t i = 0; i < system.noise_count(); ++i) {
    axpy(next, 0.5 * dw[i], b0[i]);
    axpy(next, 0.5 * dw[i], diffusion(pred, system, i));
  }
  return next;
}

TransportMidpoint::TransportMidpoint(const GalerkinBasis& basis, std::span<const VectorField> xis)
    : n_(basis.size()) {
  std::vector<VectorField> modes;
  for (std::size_t j = 0; j < n_; ++j) modes.push_back(basis.mode_field(j));
  for (const VectorField& xi : xis) {
    require_solenoidal(xi, "transport correlation field");
    std::vector<double> m(n_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const Coords col = basis.project(leray(nonlinear_L(xi, modes[j], basis.field_cutoff())));
      for (std::size_t r = 0; r < n_; ++r) m[r * n_ + j] = col[r];
    }
    matrices_.push_back(std::move(m));
  }
}

double TransportMidpoint::antisymmetry_defect() const {
  double worst = 0.0;
  for (const auto& m : matrices_)
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) worst = std::max(worst, std::abs(m[r * n_ + c] + m[c * n_ + r]));
  return worst;
}

Coords TransportMidpoint::step(std::span<const double> x, std::span<const double> dw) const {
  if (x.size() != n_) throw ArgumentError("transport step: state length mismatch");
  if (dw.size() < matrices_.size()) throw ArgumentError("transport step: too few increments");
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto n = static_cast<Eigen::Index>(n_);
  Mat gen = Mat::Zero(n, n);
  for (std::size_t i = 0; i < matrices_.size(); ++i)
    gen += 0.5 * dw[i] * Eigen::Map<const Mat>(matrices_[i].data(), n, n);
  const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
  const Mat lhs = Mat::Identity(n, n) + gen;
  const Eigen::VectorXd rhs = xv - gen * xv;
  const Eigen::PartialPivLU<Mat> lu(lhs);
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) throw IntegrityError("transport midpoint solve failed");
  return Coords(sol.data(), sol.data() + n);
}

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::kCompleted: return "completed";
    case Outcome::kStoppedBlowup: return "stopped: blowup";
    case Outcome::kOverflow: return "overflow";
  }
  return "unknown";
}

IntegrationResult integrate(std::span<const double> x0, const GalerkinSystem& system, const IntegratorConfig& config,
                            const NoisePath& path) {
  config.validate();
  if (x0.size() != system.basis.size()) throw ArgumentError("initial state length does not match basis size");
  require_finite(x0, "initial state");
  const std::size_t steps = config.step_count();
  if (std::abs(path.dt - config.dt) > 1e-12 * config.dt)
    throw ArgumentError("noise path dt does not match integrator dt");
  if (path.steps < steps) throw ArgumentError("noise path is shorter than the integration");
  if (path.columns < system.noise_count()) throw ArgumentError("noise path has fewer columns than correlations");

  std::optional<TransportMidpoint> transport;
  if (config.scheme == Scheme::kImplicitMidpointTransport)
    transport.emplace(system.basis, system.correlations.xis);

  IntegrationResult result;
  BlowupMonitor monitor(config.blowup_threshold);
  Coords x(x0.begin(), x0.end());
  const auto record = [&](double t) {
    DiagnosticsRecord r = state_norms(x, system.basis, t);
    r.blowup_partial = monitor.update(t, r.h1_sq, r.h2_sq);
    result.diagnostics.push_back(r);
  };
  record(0.0);
  result.trajectory.push_back(x);
  result.times.push_back(0.0);
  if (monitor.triggered()) {
    result.outcome = Outcome::kStoppedBlowup;
    return result;
  }

  for (std::size_t s = 0; s < steps; ++s) {
    const std::span<const double> dw = path.row(s);
    Coords next;
    switch (config.scheme) {
      case Scheme::kEulerMaruyama: next = euler_maruyama_step(x, system, dw, config.dt); break;
      case Scheme::kHeunStratonovich: next = heun_stratonovich_step(x, system, dw, config.dt); break;
      case Scheme::kImplicitMidpointTransport: next = transport->step(x, dw); break;
    }
    if (!all_finite(next)) {
      result.outcome = Outcome::kOverflow;
      result.overflow_step = s + 1;
      break;
    }
    x = std::move(next);
    result.steps_taken = s + 1;
    const double t = static_cast<double>(s + 1) * config.dt;
    record(t);
    const bool last = s + 1 == steps;
    const bool stop = monitor.triggered();
    if ((s + 1) % config.store_stride == 0 || last || stop) {
      result.trajectory.push_back(x);
      result.times.push_back(t);
    }
    if (stop) {
      result.outcome = Outcome::kStoppedBlowup;
      break;
    }
  }
  if (result.outcome == Outcome::kOverflow && result.times.back() != result.diagnostics.back().t) {
    result.trajectory.push_back(x);
    result.times.push_back(result.diagnostics.back().t);
  }
  return result;
}

}  // namespace salt
