#include "salt/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace salt {

namespace {

cplx derivative_symbol(const WaveVector& k, const std::array<int, 3>& alpha) {
  cplx s{1.0, 0.0};
  for (int d = 0; d < 3; ++d)
    for (int p = 0; p < alpha[d]; ++p) s *= cplx(0.0, static_cast<double>(k[d]));
  return s;
}

void check_same_dim(int a, int b) {
  if (a != b) throw ArgumentError("dimension mismatch");
}

}  // namespace

ScalarField partial_derivative(const ScalarField& f, int axis) {
  if (axis < 1 || axis > f.dim()) throw ArgumentError("derivative axis out of range");
  std::array<int, 3> alpha{0, 0, 0};
  alpha[static_cast<std::size_t>(axis - 1)] = 1;
  return apply_multi_derivative(f, alpha);
}

ScalarField apply_multi_derivative(const ScalarField& f, const std::array<int, 3>& alpha) {
  ScalarField out = f;
  auto c = out.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) c[i] *= derivative_symbol(out.wave(i), alpha);
  return out;
}

VectorField gradient(const ScalarField& f) {
  std::vector<ScalarField> comps;
  for (int d = 1; d <= f.dim(); ++d) comps.push_back(partial_derivative(f, d));
  return VectorField(std::move(comps), {.zero_average = true, .divergence_free = false});
}

ScalarField divergence(const VectorField& v) {
  ScalarField out(v.dim(), v.cutoff());
  for (int d = 1; d <= v.dim(); ++d) out += partial_derivative(v[d - 1], d);
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = f;
  auto c = out.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) c[i] *= -static_cast<double>(norm_sq(out.wave(i)));
  return out;
}

VectorField laplacian(const VectorField& v) {
  std::vector<ScalarField> comps;
  for (int d = 0; d < v.dim(); ++d) comps.push_back(laplacian(v[d]));
  return VectorField(std::move(comps), v.flags());
}

ScalarField multiply(const ScalarField& f, const ScalarField& g, std::optional<int> truncate_to) {
  check_same_dim(f.dim(), g.dim());
  if (truncate_to && *truncate_to < 0) throw ArgumentError("truncation cutoff must be non-negative");
  const int band = f.cutoff() + g.cutoff();
  const int r = alias_free_resolution(band);
  GridSample gf = to_grid(f, r);
  const GridSample gg = to_grid(g, r);
  for (std::size_t p = 0; p < gf.values.size(); ++p) gf.values[p] *= gg.values[p];
  ScalarField product = from_grid(gf, band);
  if (truncate_to && *truncate_to != band) return product.resized(*truncate_to);
  return product;
}

double l2_inner(const ScalarField& f, const ScalarField& g) {
  check_same_dim(f.dim(), g.dim());
  const ScalarField& small = f.cutoff() <= g.cutoff() ? f : g;
  const ScalarField& large = f.cutoff() <= g.cutoff() ? g : f;
  std::vector<double> terms(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    const cplx a = small.coeffs()[i];
    const cplx b = large[small.wave(i)];
    terms[i] = a.real() * b.real() + a.imag() * b.imag();
  }
  return torus_volume(f.dim()) * pairwise_sum(terms);
}

double l2_inner(const VectorField& f, const VectorField& g) {
  check_same_dim(f.dim(), g.dim());
  std::vector<double> parts;
  for (int c = 0; c < f.dim(); ++c) parts.push_back(l2_inner(f[c], g[c]));
  return pairwise_sum(parts);
}

std::vector<std::array<int, 3>> multi_indices(int dim, int m) {
  std::vector<std::array<int, 3>> out;
  for (int order = 0; order <= m; ++order) {
    for (int a = order; a >= 0; --a) {
      if (dim == 2) {
        out.push_back({a, order - a, 0});
        continue;
      }
      for (int b = order - a; b >= 0; --b) out.push_back({a, b, order - a - b});
    }
  }
  return out;
}

double sobolev_weight(const WaveVector& k, int dim, int m) {
  double w = 0.0;
  for (const auto& alpha : multi_indices(dim, m)) {
    double term = 1.0;
    for (int d = 0; d < dim; ++d) term *= std::pow(static_cast<double>(k[d]) * k[d], alpha[d]);
    w += term;
  }
  return w;
}

namespace {

void check_order(int m) {
  if (m < 0 || m > kMaxSobolevOrder) throw ArgumentError("unsupported Sobolev order");
}

// Weights depend only on |k_j|, so a table over one octant is enough.
std::vector<double> weight_table(int dim, int cutoff, int m) {
  const int s = cutoff + 1;
  std::vector<double> table(static_cast<std::size_t>(dim == 2 ? s * s : s * s * s));
  for (int a = 0; a <= cutoff; ++a)
    for (int b = 0; b <= cutoff; ++b)
      for (int c = 0; c <= (dim == 3 ? cutoff : 0); ++c) {
        const std::size_t idx =
            dim == 2 ? static_cast<std::size_t>(a * s + b) : static_cast<std::size_t>((a * s + b) * s + c);
        table[idx] = sobolev_weight({a, b, c}, dim, m);
      }
  return table;
}

}  // namespace

double sobolev_inner(const VectorField& f, const VectorField& g, SobolevIndex m) {
  check_order(m.m);
  check_same_dim(f.dim(), g.dim());
  const int cutoff = std::min(f.cutoff(), g.cutoff());
  const int dim = f.dim();
  const auto table = weight_table(dim, cutoff, m.m);
  const int s = cutoff + 1;
  std::vector<double> parts;
  for (int c = 0; c < dim; ++c) {
    const ScalarField& fc = f[c];
    const ScalarField& gc = g[c];
    std::vector<double> terms;
    const ScalarField probe(dim, cutoff);
    terms.reserve(probe.size());
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const WaveVector k = probe.wave(i);
      const int a = std::abs(k[0]), b = std::abs(k[1]), e = std::abs(k[2]);
      const std::size_t idx =
          dim == 2 ? static_cast<std::size_t>(a * s + b) : static_cast<std::size_t>((a * s + b) * s + e);
      const cplx x = fc[k];
      const cplx y = gc[k];
      terms.push_back(table[idx] * (x.real() * y.real() + x.imag() * y.imag()));
    }
    parts.push_back(pairwise_sum(terms));
  }
  return torus_volume(dim) * pairwise_sum(parts);
}

double sobolev_norm_sq(const VectorField& f, SobolevIndex m) { return sobolev_inner(f, f, m); }

double sup_norm_estimate(const VectorField& f, int m, std::optional<int> resolution) {
  if (m < 0 || m > 3) throw ArgumentError("sup-norm estimate supports m <= 3");
  const int r = resolution.value_or(std::max(4 * f.cutoff() + 1, 64));
  double sup = 0.0;
  for (const auto& alpha : multi_indices(f.dim(), m)) {
    for (int c = 0; c < f.dim(); ++c) {
      const GridSample g = to_grid(apply_multi_derivative(f[c], alpha), r);
      for (double v : g.values) sup = std::max(sup, std::abs(v));
    }
  }
  return sup;
}

}  // namespace salt
