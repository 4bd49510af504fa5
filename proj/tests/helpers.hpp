#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "salt/field.hpp"
#include "salt/grid.hpp"

namespace salt::testing {

using Sampler = std::function<std::array<double, 3>(double, double, double)>;

/// Exact spectral representation of a low-band trigonometric field given pointwise.
inline VectorField sampled(int dim, int cutoff, const Sampler& fn, int resolution = 32) {
  std::vector<GridSample> comps(static_cast<std::size_t>(dim), GridSample{dim, resolution, {}});
  const int r = resolution;
  const int r3 = dim == 3 ? r : 1;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r3; ++c) {
        const auto v = fn(kTwoPi * a / r, kTwoPi * b / r, kTwoPi * c / r);
        for (int j = 0; j < dim; ++j) comps[static_cast<std::size_t>(j)].values.push_back(v[static_cast<std::size_t>(j)]);
      }
  std::vector<ScalarField> out;
  for (const GridSample& g : comps) out.push_back(from_grid(g, cutoff));
  return VectorField(std::move(out));
}

inline ScalarField sampled_scalar(int dim, int cutoff, const std::function<double(double, double, double)>& fn) {
  return sampled(dim, cutoff,
                 [&](double x, double y, double z) { return std::array<double, 3>{fn(x, y, z), 0.0, 0.0}; })[0];
}

inline double max_abs_diff(const GridSample& a, const GridSample& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

inline double max_abs(const GridSample& a) {
  double m = 0.0;
  for (double v : a.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace salt::testing
