#pragma once

#include <cstddef>
#include <vector>

#include "salt/field.hpp"

namespace salt {

/// Real samples of a field on the uniform grid x_j = 2π j / R, row-major with axis 1 slowest.
struct GridSample {
  int dim = 0;
  int resolution = 0;
  std::vector<double> values;

  std::size_t point_count() const { return values.size(); }
  double& at(int i, int j, int l = 0) { return values[offset(i, j, l)]; }
  double at(int i, int j, int l = 0) const { return values[offset(i, j, l)]; }

 private:
  std::size_t offset(int i, int j, int l) const {
    const auto r = static_cast<std::size_t>(resolution);
    return dim == 2 ? static_cast<std::size_t>(i) * r + static_cast<std::size_t>(j)
                    : (static_cast<std::size_t>(i) * r + static_cast<std::size_t>(j)) * r +
                          static_cast<std::size_t>(l);
  }
};

/// Smallest 2^a 3^b 5^c that is >= 2*band + 1, i.e. alias-free for a trigonometric
/// polynomial of the given band.
int alias_free_resolution(int band);

/// Exact samples of a band-limited field. Requires R >= 2K + 1.
GridSample to_grid(const ScalarField& f, int resolution);

/// Fourier coefficients up to `cutoff` of grid samples. Exact whenever the sampled
/// function is a trigonometric polynomial of band B with R >= B + cutoff + 1.
/// The result is symmetrised so Hermitian symmetry holds bit-exactly.
ScalarField from_grid(const GridSample& g, int cutoff);

}  // namespace salt
