#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "salt/random.hpp"
#include "salt/snapshot.hpp"
#include "salt/spectral.hpp"
#include "salt/verify.hpp"

using namespace salt;
using salt::testing::sampled;
using salt::testing::sampled_scalar;

namespace {

double rel_scalar(const ScalarField& a, const ScalarField& b) {
  const int k = std::max(a.cutoff(), b.cutoff());
  const ScalarField x = a.resized(k), y = b.resized(k);
  double num = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += std::norm(x.coeffs()[i] - y.coeffs()[i]);
    nx += std::norm(x.coeffs()[i]);
    ny += std::norm(y.coeffs()[i]);
  }
  const double den = std::sqrt(std::max(nx, ny));
  return den == 0.0 ? 0.0 : std::sqrt(num) / den;
}

}  // namespace

TEST(Derivative, SineToCosine) {
  const ScalarField f = sampled_scalar(2, 3, [](double x, double, double) { return std::sin(x); });
  const ScalarField expect = sampled_scalar(2, 3, [](double x, double, double) { return std::cos(x); });
  EXPECT_LE(rel_scalar(partial_derivative(f, 1), expect), 1e-15);
  EXPECT_EQ(partial_derivative(f, 2).max_abs(), 0.0);
}

TEST(Derivative, ConstantGivesZero) {
  ScalarField one(3, 2);
  one[{0, 0, 0}] = 1.0;
  for (int j = 1; j <= 3; ++j) EXPECT_EQ(partial_derivative(one, j).max_abs(), 0.0);
}

TEST(Derivative, AxisOutOfRange) {
  const ScalarField f(2, 2);
  EXPECT_THROW(partial_derivative(f, 0), ArgumentError);
  EXPECT_THROW(partial_derivative(f, 3), ArgumentError);
}

TEST(Derivative, MatchesFiniteDifferences) {
  const ScalarField f = random_scalar(2, 8, 3, 0);
  const ScalarField df = partial_derivative(f, 1);
  const GridSample exact = to_grid(df, 512);
  const GridSample fd = finite_difference_oracle(f, 1, 512);
  // Second-order differences alone: error within the Taylor remainder h²/6 · max|∂³f|.
  const double h = kTwoPi / 512;
  const double third = salt::testing::max_abs(to_grid(partial_derivative(partial_derivative(df, 1), 1), 512));
  EXPECT_LE(salt::testing::max_abs_diff(exact, fd), h * h / 6.0 * third * 1.01);
  // Richardson combination of the R=512 and R=1024 oracles at the shared points.
  const GridSample fine = finite_difference_oracle(f, 1, 1024);
  GridSample extrapolated = fd;
  for (int a = 0; a < 512; ++a)
    for (int b = 0; b < 512; ++b)
      extrapolated.at(a, b) = (4.0 * fine.at(2 * a, 2 * b) - fd.at(a, b)) / 3.0;
  EXPECT_LE(salt::testing::max_abs_diff(exact, extrapolated) / salt::testing::max_abs(exact), 1e-6);
}

TEST(Derivative, PreservesHermitianSymmetry) {
  const ScalarField f = random_scalar(3, 4, 5, 1);
  for (int j = 1; j <= 3; ++j) EXPECT_EQ(partial_derivative(f, j).hermitian_defect(), 0.0);
}

TEST(Divergence, OfGradientOfSine) {
  const ScalarField s = sampled_scalar(2, 2, [](double x, double, double) { return std::sin(x); });
  EXPECT_LE(rel_scalar(divergence(gradient(s)), -1.0 * s), 1e-15);
}

TEST(Divergence, DivergenceFreeFieldHasTinyDivergence) {
  const VectorField v = random_field({.dim = 3, .cutoff = 5, .seed = 2});
  const ScalarField d = divergence(v);
  for (const cplx& c : d.coeffs()) EXPECT_LE(std::abs(c), 1e-14);
}

TEST(Divergence, OfGradientIsLaplacian) {
  const ScalarField f = random_scalar(3, 6, 9, 0);
  EXPECT_LE(rel_scalar(divergence(gradient(f)), laplacian(f)), 1e-13);
}

TEST(Multiply, ProductToSum) {
  const ScalarField s = sampled_scalar(2, 1, [](double x, double, double) { return std::sin(x); });
  const ScalarField full = multiply(s, s);
  const ScalarField expect = sampled_scalar(2, 2, [](double x, double, double) { return 0.5 - 0.5 * std::cos(2 * x); });
  EXPECT_EQ(full.cutoff(), 2);
  EXPECT_LE(rel_scalar(full, expect), 1e-15);
  const ScalarField cut = multiply(s, s, 1);
  EXPECT_EQ(cut.cutoff(), 1);
  EXPECT_NEAR(cut.at({0, 0, 0}).real(), 0.5, 1e-15);
  EXPECT_EQ(cut.at({2, 0, 0}), cplx());
}

TEST(Multiply, IdentityElement) {
  const ScalarField f = random_scalar(2, 5, 4, 0);
  ScalarField one(2, 0);
  one[{0, 0, 0}] = 1.0;
  EXPECT_LE(rel_scalar(multiply(f, one), f), 1e-15);
}

TEST(Multiply, MatchesPointwiseProductOnGrid) {
  const ScalarField f = random_scalar(2, 5, 11, 0, 1.0);
  const ScalarField g = random_scalar(2, 5, 11, 1, 1.0);
  const GridSample fg = to_grid(multiply(f, g), 64);
  const GridSample a = to_grid(f, 64), b = to_grid(g, 64);
  GridSample pointwise = a;
  for (std::size_t i = 0; i < a.values.size(); ++i) pointwise.values[i] = a.values[i] * b.values[i];
  EXPECT_LE(salt::testing::max_abs_diff(fg, pointwise) / salt::testing::max_abs(pointwise), 1e-12);
}

TEST(Multiply, ProductRule) {
  const ScalarField f = random_scalar(3, 4, 6, 0, 1.0);
  const ScalarField g = random_scalar(3, 3, 6, 1, 1.0);
  for (int j = 1; j <= 3; ++j) {
    const ScalarField lhs = partial_derivative(multiply(f, g), j);
    const ScalarField rhs = multiply(partial_derivative(f, j), g) + multiply(f, partial_derivative(g, j));
    EXPECT_LE(rel_scalar(lhs, rhs), 1e-12);
  }
  EXPECT_LE(multiply(f, g).hermitian_defect(), 0.0);
}

TEST(Inner, SineSquared) {
  for (int dim : {2, 3}) {
    const VectorField f = sampled(dim, 1, [](double x, double, double) { return std::array<double, 3>{std::sin(x), 0, 0}; });
    const VectorField g = sampled(dim, 1, [](double x, double, double) { return std::array<double, 3>{std::cos(x), 0, 0}; });
    EXPECT_NEAR(l2_inner(f, f), torus_volume(dim) / 2.0, 1e-12 * torus_volume(dim));
    EXPECT_NEAR(l2_inner(f, g), 0.0, 1e-15 * torus_volume(dim));
  }
}

TEST(Inner, SineSquaredMatchesQuadrature) {
  const int r = 64;
  double sum = 0.0;
  for (int a = 0; a < r; ++a) sum += r * std::pow(std::sin(kTwoPi * a / r), 2);
  const double quadrature = sum / (r * r) * torus_volume(2);
  const VectorField f = sampled(2, 1, [](double x, double, double) { return std::array<double, 3>{std::sin(x), 0, 0}; });
  EXPECT_NEAR(l2_inner(f, f), quadrature, 1e-12 * quadrature);
}

TEST(Inner, ParsevalMatchesGridQuadrature) {
  for (int dim : {2, 3}) {
    const int k = 5;
    const ScalarField f = random_scalar(dim, k, 21, 0, 1.0), g = random_scalar(dim, k, 21, 1, 1.0);
    const int r = 4 * k + 1;
    const GridSample a = to_grid(f, r), b = to_grid(g, r);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
    const double quadrature = sum / static_cast<double>(a.values.size()) * torus_volume(dim);
    EXPECT_NEAR(l2_inner(f, g), quadrature, 1e-12 * std::abs(quadrature));
  }
}

TEST(Sobolev, HandEnumeratedW12) {
  const VectorField f = sampled(2, 1, [](double x, double, double) { return std::array<double, 3>{0, std::sin(x), 0}; });
  EXPECT_NEAR(sobolev_norm_sq(f, {1}), kTwoPi * kTwoPi / 2.0 * 2.0, 1e-12);
  EXPECT_NEAR(sobolev_norm_sq(f, {0}), l2_inner(f, f), 1e-15);
}

TEST(Sobolev, ZeroField) {
  const VectorField z(3, 3);
  for (int m = 0; m <= kMaxSobolevOrder; ++m) EXPECT_EQ(sobolev_norm_sq(z, {m}), 0.0);
}

TEST(Sobolev, WeightsMatchExplicitDerivatives) {
  for (int dim : {2, 3}) {
    const VectorField f = random_field({.dim = dim, .cutoff = 4, .kind = FieldKind::kGeneral, .decay = 1.0, .seed = 8});
    double sum = 0.0;
    for (const auto& alpha : multi_indices(dim, 2)) {
      std::vector<ScalarField> comps;
      for (int c = 0; c < dim; ++c) comps.push_back(apply_multi_derivative(f[c], alpha));
      const VectorField d(std::move(comps));
      sum += l2_inner(d, d);
    }
    EXPECT_NEAR(sobolev_norm_sq(f, {2}), sum, 1e-12 * sum);
  }
}

TEST(Sobolev, MonotoneInOrder) {
  const VectorField f = random_field({.dim = 2, .cutoff = 6, .seed = 4});
  for (int m = 0; m < kMaxSobolevOrder; ++m) EXPECT_LE(sobolev_norm_sq(f, {m}), sobolev_norm_sq(f, {m + 1}));
  EXPECT_THROW(sobolev_norm_sq(f, {kMaxSobolevOrder + 1}), ArgumentError);
}

TEST(SupNorm, SineAmplitude) {
  const VectorField f = sampled(2, 1, [](double x, double, double) { return std::array<double, 3>{std::sin(x), 0, 0}; });
  EXPECT_NEAR(sup_norm_estimate(f, 0), 1.0, 1e-3);
  EXPECT_NEAR(sup_norm_estimate(f, 1), 1.0, 1e-3);
}

TEST(SupNorm, RefinementConsistent) {
  const VectorField f = random_field({.dim = 2, .cutoff = 8, .seed = 3});
  for (int m = 0; m <= 3; ++m) {
    const double a = sup_norm_estimate(f, m), b = sup_norm_estimate(f, m, 128);
    EXPECT_LT(std::abs(a - b) / b, 5e-3);
  }
}

TEST(Random, RestrictionProperty) {
  const VectorField small = random_field({.dim = 3, .cutoff = 3, .seed = 5, .member = 2});
  const VectorField big = random_field({.dim = 3, .cutoff = 6, .seed = 5, .member = 2});
  EXPECT_EQ(relative_residual(small, big.resized(3)), 0.0);
  EXPECT_LE(big.divergence_defect(), 1e-15);
  EXPECT_EQ(big.hermitian_defect(), 0.0);
}

TEST(Snapshot, RoundTripAtFloatPrecision) {
  const VectorField f = random_field({.dim = 3, .cutoff = 3, .seed = 7});
  std::stringstream buf;
  write_snapshot(buf, f);
  const VectorField g = read_snapshot(buf);
  EXPECT_EQ(g.dim(), 3);
  EXPECT_EQ(g.cutoff(), 3);
  EXPECT_TRUE(g.flags().divergence_free);
  EXPECT_LE(relative_residual(f, g), 1e-7);
  EXPECT_EQ(g.hermitian_defect(), 0.0);
}

TEST(Snapshot, RejectsBrokenSymmetry) {
  const VectorField f = random_field({.dim = 2, .cutoff = 2, .decay = 0.0, .seed = 7});
  std::stringstream buf;
  write_snapshot(buf, f);
  std::string bytes = buf.str();
  bytes[bytes.size() - 20] ^= 0x40;
  std::stringstream corrupt(bytes);
  try {
    read_snapshot(corrupt);
    FAIL() << "corrupted snapshot accepted";
  } catch (const SnapshotError& e) {
    EXPECT_NE(std::string(e.what()).find("Hermitian"), std::string::npos);
  }
}

TEST(Snapshot, RejectsBadMagic) {
  std::stringstream buf("NOTASNAPSHOT...");
  EXPECT_THROW(read_snapshot(buf), SnapshotError);
}

TEST(FiniteDifference, SineAndConstant) {
  const ScalarField s = sampled_scalar(2, 1, [](double x, double, double) { return std::sin(x); });
  const ScalarField c = sampled_scalar(2, 1, [](double x, double, double) { return std::cos(x); });
  EXPECT_LE(salt::testing::max_abs_diff(finite_difference_oracle(s, 1, 512), to_grid(c, 512)), 1e-4);
  ScalarField one(2, 1);
  one[{0, 0, 0}] = 1.0;
  EXPECT_LE(salt::testing::max_abs(finite_difference_oracle(one, 2, 512)), 1e-15);
}
