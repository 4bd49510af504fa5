#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "salt/correlation.hpp"
#include "salt/experiments.hpp"
#include "salt/noise.hpp"
#include "salt/random.hpp"
#include "salt/spectral.hpp"

using namespace salt;

namespace {

Coords random_coords(const GalerkinBasis& basis, std::uint64_t member, double amplitude = 1.0) {
  Coords x = basis.project(
      random_field({.dim = basis.dim(), .cutoff = basis.field_cutoff(), .decay = 1.0, .seed = 51, .member = member}));
  const double n = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  for (double& v : x) v *= amplitude / n;
  return x;
}

double norm(const Coords& x) { return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)); }

}  // namespace

TEST(Correlation, EmptySet) {
  const CorrelationSet set = build_correlation_set({.dim = 2, .count = 0});
  EXPECT_TRUE(set.empty());
  EXPECT_EQ(set.summability, 0.0);
}

TEST(Correlation, SummabilityOfUnitNormalizedFields) {
  const CorrelationSet set = build_correlation_set({.dim = 2, .count = 3, .decay_rate = 1.0, .cutoff = 2, .seed = 9});
  EXPECT_NEAR(set.summability, 1.0 + 0.25 + 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(set.summability, 1.3611, 1e-4);
  for (const VectorField& xi : set.xis) {
    EXPECT_LE(divergence(xi).max_abs(), 1e-13);
    EXPECT_LE(xi.divergence_defect(), 1e-13);
  }
}

TEST(Correlation, ColumnsStableUnderGrowth) {
  const CorrelationSet a = build_correlation_set({.dim = 3, .count = 2, .cutoff = 2, .seed = 10});
  const CorrelationSet b = build_correlation_set({.dim = 3, .count = 5, .cutoff = 2, .seed = 10});
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(relative_residual(a.xis[i], b.xis[i]), 0.0);
}

TEST(Correlation, Errors) {
  EXPECT_THROW(build_correlation_set({.dim = 2, .count = 2, .decay_rate = 0.0}), ArgumentError);
  EXPECT_THROW(build_correlation_set({.dim = 2, .count = 2, .decay_rate = 0.4, .unbounded = true}), ArgumentError);
  EXPECT_THROW(build_correlation_set({.dim = 4, .count = 2}), ArgumentError);
}

TEST(Correlation, TailEstimate) {
  const CorrelationSet set = build_correlation_set({.dim = 2, .count = 4, .decay_rate = 1.0, .cutoff = 1});
  EXPECT_NEAR(set.tail_estimate(), 0.25, 1e-15);
}

TEST(NoisePath, ColumnsStableUnderGrowth) {
  const NoisePath a = NoisePath::generate(3, 1e-2, 50, 2);
  const NoisePath b = NoisePath::generate(3, 1e-2, 50, 6);
  for (std::size_t s = 0; s < 50; ++s)
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(a.at(s, i), b.at(s, i));
}

TEST(NoisePath, IncrementVariance) {
  const NoisePath p = NoisePath::generate(4, 0.01, 20000, 1);
  double sum = 0.0;
  for (double v : p.increments) sum += v * v;
  EXPECT_NEAR(sum / 20000.0, 0.01, 0.0005);
}

TEST(NoisePath, CoarseningSumsIncrements) {
  const NoisePath fine = NoisePath::generate(5, 1e-3, 12, 2);
  const NoisePath coarse = fine.coarsened(4);
  ASSERT_EQ(coarse.steps, 3u);
  EXPECT_DOUBLE_EQ(coarse.dt, 4e-3);
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_DOUBLE_EQ(coarse.at(1, i), fine.at(4, i) + fine.at(5, i) + fine.at(6, i) + fine.at(7, i));
  EXPECT_THROW(fine.coarsened(5), ArgumentError);
}

TEST(NoisePath, FileRoundTrip) {
  const NoisePath p = NoisePath::generate(6, 2e-3, 7, 3);
  std::stringstream buf;
  write_noise_path(buf, p);
  const NoisePath q = read_noise_path(buf);
  EXPECT_EQ(q.seed, 6u);
  EXPECT_EQ(q.increments, p.increments);
  std::stringstream bad("SALTPATH1");
  EXPECT_THROW(read_noise_path(bad), NoisePathError);
}

TEST(EulerMaruyama, ZeroNoiseZeroStateUnchanged) {
  const GalerkinBasis basis(2, 2);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2});
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 1.0, xis);
  const Coords zero(basis.size(), 0.0);
  const std::vector<double> dw{0.0, 0.0};
  EXPECT_EQ(euler_maruyama_step(zero, system, dw, 1e-3), zero);
}

TEST(EulerMaruyama, DeterministicLimitIsExplicitEuler) {
  const GalerkinBasis basis(2, 4);
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.1, CorrelationSet{});
  const Coords x = random_coords(basis, 1);
  const Coords a = drift(x, system);
  const Coords next = euler_maruyama_step(x, system, {}, 1e-2);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(next[i], x[i] + 1e-2 * a[i]);
}

TEST(EulerMaruyama, SingleModeLinearDecay) {
  const GalerkinBasis basis(2, 2);
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 1.0, CorrelationSet{});
  Coords x(basis.size(), 0.0);
  x[0] = 1.0;
  ASSERT_EQ(basis.mode(0).lambda, 1.0);
  const Coords next = euler_maruyama_step(x, system, {}, 1e-3);
  EXPECT_NEAR(next[0], 0.999, 1e-15);
  for (std::size_t i = 1; i < next.size(); ++i) EXPECT_EQ(next[i], 0.0);
}

TEST(EulerMaruyama, RejectsStratonovichForm) {
  const GalerkinBasis basis(2, 2);
  const GalerkinSystem system(basis, EquationForm::kVelocityStrat, 1.0, CorrelationSet{});
  EXPECT_THROW(euler_maruyama_step(Coords(basis.size(), 0.0), system, {}, 1e-3), ArgumentError);
}

TEST(Heun, ZeroNoiseIsHeunOdeStep) {
  const GalerkinBasis basis(2, 4);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2});
  const GalerkinSystem system(basis, EquationForm::kVelocityStrat, 0.1, xis);
  const Coords x = random_coords(basis, 2);
  const double dt = 1e-2;
  const Coords a = drift(x, system);
  Coords pred = x;
  for (std::size_t i = 0; i < x.size(); ++i) pred[i] += dt * a[i];
  const Coords b = drift(pred, system);
  const std::vector<double> dw{0.0, 0.0};
  const Coords next = heun_stratonovich_step(x, system, dw, dt);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(next[i], x[i] + 0.5 * dt * (a[i] + b[i]), 1e-14);
  EXPECT_EQ(heun_stratonovich_step(Coords(basis.size(), 0.0), system, dw, dt), Coords(basis.size(), 0.0));
}

TEST(Transport, AntisymmetricMatrices) {
  const GalerkinBasis basis(2, 4);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 3, .cutoff = 2, .seed = 4});
  const TransportMidpoint t(basis, xis.xis);
  EXPECT_LE(t.antisymmetry_defect(), 1e-12);
  const Coords x = random_coords(basis, 3);
  EXPECT_EQ(t.step(x, std::vector<double>{0.0, 0.0, 0.0}), x);
}

TEST(Transport, ConservesEnergyOverThousandSteps) {
  const GalerkinBasis basis(2, 4);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2, .seed = 5});
  const TransportMidpoint t(basis, xis.xis);
  const NoisePath path = NoisePath::generate(5, 1e-3, 1000, 2);
  Coords x = random_coords(basis, 4);
  const double e0 = norm(x);
  for (std::size_t s = 0; s < path.steps; ++s) x = t.step(x, path.row(s));
  EXPECT_LE(std::abs(norm(x) - e0) / e0, 1e-10);
}

TEST(Integrate, ZeroInitialDataStaysZero) {
  const GalerkinBasis basis(2, 3);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2});
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.1, xis);
  const IntegratorConfig config{.dt = 1e-2, .t_end = 0.2};
  const IntegrationResult r = integrate(Coords(basis.size(), 0.0), system, config, NoisePath::generate(1, 1e-2, 20, 2));
  EXPECT_EQ(r.outcome, Outcome::kCompleted);
  EXPECT_EQ(norm(r.final_state()), 0.0);
  EXPECT_EQ(r.diagnostics.size(), 21u);
}

TEST(Integrate, StoresEveryStrideAndFinalState) {
  const GalerkinBasis basis(2, 2);
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.1, CorrelationSet{});
  const IntegratorConfig config{.dt = 1e-2, .t_end = 0.25, .store_stride = 10};
  const IntegrationResult r = integrate(random_coords(basis, 1), system, config, NoisePath::generate(1, 1e-2, 25, 0));
  EXPECT_EQ(r.times, (std::vector<double>{0.0, 0.1, 0.2, 0.25}));
}

TEST(Integrate, RejectsMismatchedPath) {
  const GalerkinBasis basis(2, 2);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2});
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.1, xis);
  const IntegratorConfig config{.dt = 1e-2, .t_end = 0.1};
  const Coords x0(basis.size(), 0.0);
  EXPECT_THROW(integrate(x0, system, config, NoisePath::generate(1, 2e-2, 10, 2)), ArgumentError);
  EXPECT_THROW(integrate(x0, system, config, NoisePath::generate(1, 1e-2, 5, 2)), ArgumentError);
  EXPECT_THROW(integrate(x0, system, config, NoisePath::generate(1, 1e-2, 10, 1)), ArgumentError);
}

TEST(Integrate, OverflowIsReported) {
  const GalerkinBasis basis(2, 4);
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.0, CorrelationSet{});
  const IntegratorConfig config{.dt = 10.0, .t_end = 2000.0};
  const IntegrationResult r = integrate(random_coords(basis, 2, 1e3), system, config,
                                        NoisePath::generate(1, 10.0, config.step_count(), 0));
  EXPECT_EQ(r.outcome, Outcome::kOverflow);
  ASSERT_TRUE(r.overflow_step.has_value());
  for (double v : r.final_state()) EXPECT_TRUE(std::isfinite(v));
}

TEST(Integrate, HalvingDtIsFirstOrderForEuler) {
  const GalerkinBasis basis(2, 4);
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.5, CorrelationSet{});
  const Coords x0 = random_coords(basis, 3, 2.0);
  const auto run = [&](double dt) {
    const IntegratorConfig c{.dt = dt, .t_end = 0.5};
    return integrate(x0, system, c, NoisePath::generate(0, dt, c.step_count(), 0)).final_state();
  };
  const Coords ref = run(1e-5), a = run(1e-2), b = run(5e-3);
  double ea = 0.0, eb = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    ea += std::pow(a[i] - ref[i], 2);
    eb += std::pow(b[i] - ref[i], 2);
  }
  const double ratio = std::sqrt(ea / eb);
  EXPECT_GT(ratio, 1.8);
  EXPECT_LT(ratio, 2.2);
}

TEST(Integrate, ConsistencyExperimentSmall) {
  ConsistencySpec spec;
  spec.seeds = {1, 2, 3, 4};
  const ConsistencyResult r = consistency_experiment(spec);
  ASSERT_EQ(r.ratios.size(), 2u);
  for (double ratio : r.ratios) {
    EXPECT_GT(ratio, 1.5);
    EXPECT_LT(ratio, 3.0);
  }
}
