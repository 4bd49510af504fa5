#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "salt/correlation.hpp"
#include "salt/galerkin.hpp"
#include "salt/operators.hpp"
#include "salt/random.hpp"
#include "salt/spectral.hpp"
#include "salt/verify.hpp"
#include "salt/vorticity.hpp"

using namespace salt;
using salt::testing::sampled;

namespace {

Coords random_coords(const GalerkinBasis& basis, std::uint64_t member, double decay = 2.0) {
  return basis.project(
      random_field({.dim = basis.dim(), .cutoff = basis.field_cutoff(), .decay = decay, .seed = 41, .member = member}));
}

double max_diff(const Coords& a, const Coords& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const Coords& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Basis, TwoDimensionalUnitCube) {
  const std::vector<StokesMode> modes = enumerate_basis(2, 1);
  ASSERT_EQ(modes.size(), 8u);
  const std::vector<double> lambdas{1, 1, 1, 1, 2, 2, 2, 2};
  for (std::size_t i = 0; i < modes.size(); ++i) EXPECT_EQ(modes[i].lambda, lambdas[i]);
  std::set<std::pair<int, int>> ks;
  for (const StokesMode& m : modes) ks.insert({m.k[0], m.k[1]});
  EXPECT_EQ(ks, (std::set<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {1, -1}}));
}

TEST(Basis, FirstEigenvalueIsOne) {
  for (int dim : {2, 3})
    for (int k : {1, 2, 4}) EXPECT_EQ(enumerate_basis(dim, k).front().lambda, 1.0);
  EXPECT_THROW(enumerate_basis(2, 0), ArgumentError);
}

TEST(Basis, EigenrelationAndOrthonormality) {
  for (int dim : {2, 3}) {
    const GalerkinBasis basis(dim, 2);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const VectorField a = basis.mode_field(i);
      EXPECT_LE((stokes_apply(a) - basis.mode(i).lambda * a).max_abs(), 1e-13);
      EXPECT_NEAR(l2_inner(a, a), 1.0, 1e-13);
      if (i > 0) EXPECT_NEAR(l2_inner(a, basis.mode_field(i - 1)), 0.0, 1e-14);
    }
  }
}

TEST(Basis, FullCubeCoordinatesRoundTrip) {
  for (int dim : {2, 3}) {
    const GalerkinBasis basis(dim, 3);
    const VectorField f = random_field({.dim = dim, .cutoff = 3, .seed = 2});
    EXPECT_LE(relative_residual(basis.to_field(basis.project(f)), f), 1e-14);
  }
}

TEST(Basis, ManifestHeader) {
  std::ostringstream out;
  GalerkinBasis(3, 1).write_manifest(out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "index,k1,k2,k3,p1,p2,p3,parity,lambda");
}

TEST(Projection, TailEqualityForDiscardedEigenmode) {
  for (int dim : {2, 3})
    for (int k : {2, 4}) EXPECT_LE(tail_eigenmode_residual(dim, k), 1e-13);
}

TEST(Projection, SpanIsUnchanged) {
  const GalerkinBasis basis(2, 4);
  const std::size_t n = 20;
  Coords x = random_coords(basis, 1);
  for (std::size_t i = n; i < x.size(); ++i) x[i] = 0.0;
  const VectorField f = basis.to_field(x);
  EXPECT_LE(relative_residual(project_Pn(f, n, basis), f), 1e-14);
}

TEST(Projection, TailBoundOverHundredSeeds) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) EXPECT_GE(tail_bound_slack(2, 4, seed), -1e-12) << seed;
}

TEST(Drift, ZeroState) {
  const GalerkinBasis basis(2, 3);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2, .seed = 1});
  for (EquationForm form : {EquationForm::kVelocityIto, EquationForm::kVelocityStrat}) {
    const GalerkinSystem system(basis, form, 0.3, xis);
    const Coords zero(basis.size(), 0.0);
    EXPECT_EQ(max_abs(drift(zero, system)), 0.0);
    EXPECT_EQ(max_abs(diffusion(zero, system, 1)), 0.0);
  }
}

TEST(Drift, SingleShearModeDecaysViscously) {
  const GalerkinBasis basis(2, 3);
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.7, CorrelationSet{});
  const VectorField a = sampled(2, 1, [](double, double y, double) { return std::array<double, 3>{std::sin(y), 0, 0}; });
  const Coords x = basis.project(a);
  Coords expect = x;
  for (double& v : expect) v *= -0.7;
  EXPECT_LE(max_diff(drift(x, system), expect), 1e-15);
}

TEST(Drift, ItoMinusStratIsCorrection) {
  const GalerkinBasis basis(2, 4, 30);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 3, .cutoff = 2, .seed = 3});
  const GalerkinSystem ito(basis, EquationForm::kVelocityIto, 0.2, xis);
  const GalerkinSystem strat(basis, EquationForm::kVelocityStrat, 0.2, xis);
  const Coords x = random_coords(basis, 4);
  const Coords a = drift(x, ito), b = drift(x, strat);
  const Coords c = basis.project(ito_correction(xis.xis, basis.to_field(x)));
  Coords diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  EXPECT_LE(max_diff(diff, c), 1e-12 * max_abs(c));
}

TEST(Drift, MatchesReassemblyFromOperators) {
  const GalerkinBasis basis(2, 4, 24);
  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 2, .cutoff = 2, .seed = 6});
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 0.5, xis);
  const Coords x = random_coords(basis, 5);
  const VectorField u = basis.to_field(x);
  VectorField rhs = -1.0 * leray(nonlinear_L(u, u)) - 0.5 * stokes_apply(u);
  for (const VectorField& xi : xis.xis) rhs += 0.5 * leray(salt_B(xi, salt_B(xi, u)));
  const Coords expect = basis.project(rhs);
  EXPECT_LE(max_diff(drift(x, system), expect), 1e-12 * max_abs(expect));
  const Coords d = basis.project(-1.0 * leray(salt_B(xis.xis[1], u)));
  EXPECT_LE(max_diff(diffusion(x, system, 1), d), 1e-12 * max_abs(d));
}

TEST(Diffusion, ZeroXiAndLinearity) {
  const GalerkinBasis basis(2, 3);
  CorrelationSet zero;
  zero.xis.push_back(VectorField(2, 2));
  zero.norms3inf.push_back(0.0);
  const GalerkinSystem z(basis, EquationForm::kVelocityIto, 1.0, zero);
  EXPECT_EQ(max_abs(diffusion(random_coords(basis, 6), z, 0)), 0.0);

  const CorrelationSet xis = build_correlation_set({.dim = 2, .count = 1, .cutoff = 2, .seed = 7});
  const GalerkinSystem system(basis, EquationForm::kVelocityIto, 1.0, xis);
  const Coords x = random_coords(basis, 7), y = random_coords(basis, 8);
  Coords sum(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + 2.0 * y[i];
  const Coords a = diffusion(sum, system, 0), b = diffusion(x, system, 0), c = diffusion(y, system, 0);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i] + 2.0 * c[i], 1e-12 * max_abs(a));
  EXPECT_THROW(diffusion(x, system, 1), ArgumentError);
}

TEST(Vorticity, FormRequiresThreeDimensions) {
  EXPECT_THROW(GalerkinSystem(GalerkinBasis(2, 2), EquationForm::kVorticityIto, 1.0, CorrelationSet{}), ArgumentError);
}

TEST(Vorticity, ZeroStateAndPlanarShear) {
  const GalerkinBasis basis(3, 2);
  const GalerkinSystem system(basis, EquationForm::kVorticityIto, 0.4, CorrelationSet{});
  EXPECT_EQ(max_abs(drift(Coords(basis.size(), 0.0), system)), 0.0);
  const VectorField u = sampled(3, 1, [](double, double y, double) { return std::array<double, 3>{std::sin(y), 0, 0}; });
  const Coords w = basis.project(curl(u));
  Coords expect = w;
  for (double& v : expect) v *= -0.4;
  EXPECT_LE(max_diff(drift(w, system), expect), 1e-14);
}

TEST(Vorticity, CurlOfVelocityDriftIsVorticityDrift) {
  const GalerkinBasis basis(3, 3);
  const GalerkinSystem vel(basis, EquationForm::kVelocityIto, 0.3, CorrelationSet{});
  const GalerkinSystem vort(basis, EquationForm::kVorticityIto, 0.3, CorrelationSet{});
  const Coords x = random_coords(basis, 9);
  const VectorField u = basis.to_field(x);
  const VectorField lhs = curl(basis.to_field(drift(x, vel)));
  const VectorField rhs = basis.to_field(drift(basis.project(curl(u)), vort));
  EXPECT_LE(relative_residual(lhs, rhs), 1e-10);
}
