#include "salt/experiments.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>

#include "salt/correlation.hpp"
#include "salt/grid.hpp"
#include "salt/parallel.hpp"
#include "salt/random.hpp"

namespace salt {

namespace {

double norm(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

double relative_difference(std::span<const double> a, std::span<const double> b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(num) / norm(b);
}

DecayResult run_decay(const GalerkinBasis& basis, Coords x0, double nu, double dt, double t_end,
                      double threshold_factor) {
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, nu, CorrelationSet{});
  const double initial = state_norms(x0, basis, 0.0).h1_sq;
  IntegratorConfig config{.scheme = Scheme::kEulerMaruyama,
                          .dt = dt,
                          .t_end = t_end,
                          .blowup_threshold = threshold_factor * initial,
                          .store_stride = 1};
  const NoisePath path = NoisePath::generate(0, dt, config.step_count(), 0);
  DecayResult out;
  out.run = integrate(x0, system, config, path);
  out.initial_functional = initial;

  // Least-squares slope of ln ‖u‖² against t over the recorded steps.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const auto count = static_cast<double>(out.run.diagnostics.size());
  for (const DiagnosticsRecord& r : out.run.diagnostics) {
    const double y = std::log(r.l2_sq);
    st += r.t;
    sy += y;
    stt += r.t * r.t;
    sty += r.t * y;
    out.max_functional_ratio = std::max(out.max_functional_ratio, r.blowup_partial / initial);
  }
  out.fitted_rate = -(count * sty - st * sy) / (count * stt - st * st);
  return out;
}

}  // namespace

ConsistencyResult consistency_experiment(const ConsistencySpec& spec) {
  if (spec.dts.empty()) throw ArgumentError("consistency experiment needs at least one dt");
  const double finest = *std::min_element(spec.dts.begin(), spec.dts.end());
  std::vector<std::size_t> factors;
  for (double dt : spec.dts) {
    const double f = dt / finest;
    if (std::abs(f - std::round(f)) > 1e-9 * f) throw ArgumentError("every dt must be a multiple of the finest dt");
    factors.push_back(static_cast<std::size_t>(std::llround(f)));
  }
  const GalerkinBasis basis(2, spec.cutoff, spec.n);
  const auto fine_steps = static_cast<std::size_t>(std::llround(spec.t_end / finest));

  ConsistencyResult result;
  result.seeds = spec.seeds;
  result.dts = spec.dts;
  result.differences.assign(spec.seeds.size(), std::vector<double>(spec.dts.size(), 0.0));
  parallel_for(spec.seeds.size(), [&](std::size_t s) {
    const std::uint64_t seed = spec.seeds[s];
    const CorrelationSet xis = build_correlation_set({.dim = 2,
                                                      .count = spec.noise_count,
                                                      .decay_rate = spec.decay_rate,
                                                      .cutoff = spec.xi_cutoff,
                                                      .seed = seed});
    const GalerkinSystem ito(basis, EquationForm::kVelocityIto, spec.nu, xis);
    const GalerkinSystem strat(basis, EquationForm::kVelocityStrat, spec.nu, xis);
    Coords x0 = basis.project(
        random_field({.dim = 2, .cutoff = basis.field_cutoff(), .decay = 0.0, .seed = seed, .member = 7}));
    const double scale = spec.amplitude / norm(x0);
    for (double& v : x0) v *= scale;
    const NoisePath fine = NoisePath::generate(seed, finest, fine_steps, spec.noise_count);
    for (std::size_t d = 0; d < spec.dts.size(); ++d) {
      const NoisePath path = factors[d] == 1 ? fine : fine.coarsened(factors[d]);
      const IntegratorConfig em{.scheme = Scheme::kEulerMaruyama, .dt = path.dt, .t_end = spec.t_end};
      const IntegratorConfig heun{.scheme = Scheme::kHeunStratonovich, .dt = path.dt, .t_end = spec.t_end};
      const IntegrationResult a = integrate(x0, ito, em, path);
      const IntegrationResult b = integrate(x0, strat, heun, path);
      result.differences[s][d] = relative_difference(a.final_state(), b.final_state());
    }
  });
  for (std::size_t d = 0; d < spec.dts.size(); ++d) {
    double sum = 0.0;
    for (const auto& row : result.differences) sum += row[d];
    result.mean.push_back(sum / static_cast<double>(spec.seeds.size()));
  }
  for (std::size_t d = 0; d + 1 < result.mean.size(); ++d) result.ratios.push_back(result.mean[d] / result.mean[d + 1]);
  return result;
}

void write_consistency_csv(std::ostream& out, const ConsistencyResult& result) {
  out << "seed,dt,relative_difference\n" << std::setprecision(17);
  for (std::size_t s = 0; s < result.seeds.size(); ++s)
    for (std::size_t d = 0; d < result.dts.size(); ++d)
      out << result.seeds[s] << ',' << result.dts[d] << ',' << result.differences[s][d] << '\n';
}

void write_consistency_summary(std::ostream& out, const ConsistencyResult& result) {
  out << "dt,mean_relative_difference,ratio_to_next\n" << std::setprecision(17);
  for (std::size_t d = 0; d < result.dts.size(); ++d) {
    out << result.dts[d] << ',' << result.mean[d] << ',';
    if (d < result.ratios.size()) out << result.ratios[d];
    out << '\n';
  }
}

VectorField taylor_green_field(int cutoff) {
  const int r = 16;
  std::vector<GridSample> comps(2, GridSample{.dim = 2, .resolution = r, .values = {}});
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const double x1 = kTwoPi * a / r, x2 = kTwoPi * b / r;
      comps[0].values.push_back(std::sin(x1) * std::cos(x2));
      comps[1].values.push_back(-std::cos(x1) * std::sin(x2));
    }
  VectorField u({from_grid(comps[0], cutoff), from_grid(comps[1], cutoff)});
  u.flags() = {.zero_average = true, .divergence_free = true};
  return u;
}

DecayResult taylor_green(const TaylorGreenSpec& spec) {
  const GalerkinBasis basis(2, spec.cutoff);
  return run_decay(basis, basis.project(taylor_green_field(basis.field_cutoff())), spec.nu, spec.dt, spec.t_end,
                   spec.threshold_factor);
}

DecayResult stress_test(const StressSpec& spec) {
  const GalerkinBasis basis(2, spec.cutoff);
  Coords x0 = basis.project(
      random_field({.dim = 2, .cutoff = basis.field_cutoff(), .decay = 0.0, .seed = spec.seed, .member = 11}));
  const double scale = spec.amplitude / norm(x0);
  for (double& v : x0) v *= scale;
  return run_decay(basis, std::move(x0), spec.nu, spec.dt, spec.t_end, spec.threshold_factor);
}

}  // namespace salt
