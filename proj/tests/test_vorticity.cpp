#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "salt/operators.hpp"
#include "salt/random.hpp"
#include "salt/spectral.hpp"
#include "salt/vorticity.hpp"

using namespace salt;
using salt::testing::sampled;

TEST(Curl, SingleMode) {
  const VectorField f = sampled(3, 1, [](double x, double, double) { return std::array<double, 3>{0, 0, std::sin(x)}; });
  const VectorField expect =
      sampled(3, 1, [](double x, double, double) { return std::array<double, 3>{0, -std::cos(x), 0}; });
  EXPECT_LE(relative_residual(curl(f), expect), 1e-15);
}

TEST(Curl, OfGradientVanishes) {
  const ScalarField s = salt::testing::sampled_scalar(3, 1, [](double x, double y, double) {
    return std::sin(x) * std::sin(y);
  });
  EXPECT_LE(curl(gradient(s)).max_abs(), 1e-16);
}

TEST(Curl, MatchesPartialDerivativeOracle) {
  const VectorField f = random_field({.dim = 3, .cutoff = 4, .kind = FieldKind::kGeneral, .seed = 2});
  std::vector<ScalarField> comps;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    comps.push_back(partial_derivative(f[k], j + 1) - partial_derivative(f[j], k + 1));
  }
  EXPECT_LE(relative_residual(curl(f), VectorField(std::move(comps))), 1e-13);
}

TEST(Curl, RejectsTwoDimensions) { EXPECT_THROW(curl(VectorField(2, 2)), ArgumentError); }

TEST(VortL, AntisymmetricDefinition) {
  const VectorField f = random_field({.dim = 3, .cutoff = 3, .seed = 3});
  EXPECT_EQ(vort_L(f, f).max_abs(), 0.0);
}

TEST(VortL, CurlOfNonlinearTerm) {
  const VectorField f = random_field({.dim = 3, .cutoff = 4, .decay = 2.0, .seed = 4});
  EXPECT_LE(relative_residual(curl(nonlinear_L(f, f)), vort_L(f, curl(f))), 1e-11);
}

TEST(VortL, CurlOfSaltB) {
  const VectorField xi = random_field({.dim = 3, .cutoff = 2, .decay = 2.0, .seed = 5});
  const VectorField f = random_field({.dim = 3, .cutoff = 4, .decay = 2.0, .seed = 6});
  EXPECT_LE(relative_residual(curl(salt_B(xi, f)), vort_L(xi, curl(f))), 1e-11);
}

TEST(BiotSavart, SingleMode) {
  const VectorField w = sampled(3, 1, [](double x, double, double) { return std::array<double, 3>{0, 0, std::cos(x)}; });
  const VectorField u = biot_savart(w);
  const VectorField expect =
      sampled(3, 1, [](double x, double, double) { return std::array<double, 3>{0, std::sin(x), 0}; });
  EXPECT_LE(relative_residual(u, expect), 1e-15);
  EXPECT_LE(relative_residual(curl(u), w), 1e-15);
}

TEST(BiotSavart, ZeroAndRoundTrip) {
  EXPECT_EQ(biot_savart(VectorField(3, 2)).max_abs(), 0.0);
  const VectorField w = random_field({.dim = 3, .cutoff = 8, .decay = 1.0, .seed = 7});
  const VectorField u = biot_savart(w);
  EXPECT_LE((curl(u) - w).max_abs(), 1e-12 * w.max_abs());
  EXPECT_LE(divergence(u).max_abs(), 1e-15 * u.max_abs());
}

TEST(BiotSavart, RejectsDivergentInput) {
  const VectorField g = random_field({.dim = 3, .cutoff = 3, .kind = FieldKind::kGradient, .seed = 8});
  EXPECT_THROW(biot_savart(g), ContractViolation);
}
