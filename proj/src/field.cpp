#include "salt/field.hpp"

#include <algorithm>
#include <cmath>

namespace salt {

double torus_volume(int dim) { return std::pow(kTwoPi, dim); }

ScalarField::ScalarField(int dim, int cutoff) : dim_(dim), cutoff_(cutoff) {
  if (dim != 2 && dim != 3) throw ArgumentError("field dimension must be 2 or 3");
  if (cutoff < 0) throw ArgumentError("field cutoff must be non-negative");
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(side());
  coeffs_.assign(n, cplx{});
}

bool ScalarField::contains(const WaveVector& k) const {
  for (int d = 0; d < dim_; ++d)
    if (std::abs(k[d]) > cutoff_) return false;
  for (int d = dim_; d < 3; ++d)
    if (k[d] != 0) return false;
  return true;
}

std::size_t ScalarField::index(const WaveVector& k) const {
  std::size_t idx = 0;
  const auto s = static_cast<std::size_t>(side());
  for (int d = 0; d < dim_; ++d) idx = idx * s + static_cast<std::size_t>(k[d] + cutoff_);
  return idx;
}

WaveVector ScalarField::wave(std::size_t index) const {
  WaveVector k{0, 0, 0};
  const auto s = static_cast<std::size_t>(side());
  for (int d = dim_ - 1; d >= 0; --d) {
    k[d] = static_cast<int>(index % s) - cutoff_;
    index /= s;
  }
  return k;
}

ScalarField ScalarField::resized(int cutoff) const {
  ScalarField out(dim_, cutoff);
  const int common = std::min(cutoff, cutoff_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const WaveVector k = out.wave(i);
    bool inside = true;
    for (int d = 0; d < dim_; ++d) inside = inside && std::abs(k[d]) <= common;
    if (inside) out.coeffs_[i] = coeffs_[index(k)];
  }
  return out;
}

double ScalarField::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const WaveVector k = wave(i);
    worst = std::max(worst, std::abs(coeffs_[index(negate(k))] - std::conj(coeffs_[i])));
  }
  return worst;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  if (other.dim_ != dim_) throw ArgumentError("dimension mismatch in field addition");
  if (other.cutoff_ > cutoff_) *this = resized(other.cutoff_);
  if (other.cutoff_ == cutoff_) {
    for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += other.coeffs_[i];
  } else {
    for (std::size_t i = 0; i < other.size(); ++i) coeffs_[index(other.wave(i))] += other.coeffs_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  if (other.dim_ != dim_) throw ArgumentError("dimension mismatch in field subtraction");
  if (other.cutoff_ > cutoff_) *this = resized(other.cutoff_);
  if (other.cutoff_ == cutoff_) {
    for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= other.coeffs_[i];
  } else {
    for (std::size_t i = 0; i < other.size(); ++i) coeffs_[index(other.wave(i))] -= other.coeffs_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (cplx& c : coeffs_) c *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(int dim, int cutoff, FieldFlags flags) : flags_(flags) {
  if (dim != 2 && dim != 3) throw ArgumentError("field dimension must be 2 or 3");
  components_.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c) components_.emplace_back(dim, cutoff);
}

VectorField::VectorField(std::vector<ScalarField> components, FieldFlags flags)
    : components_(std::move(components)), flags_(flags) {
  const int n = static_cast<int>(components_.size());
  if (n != 2 && n != 3) throw ArgumentError("vector field needs 2 or 3 components");
  for (const auto& c : components_)
    if (c.dim() != n || c.cutoff() != components_.front().cutoff())
      throw ArgumentError("vector components must share dimension and cutoff");
}

VectorField VectorField::resized(int cutoff) const {
  std::vector<ScalarField> comps;
  for (const auto& c : components_) comps.push_back(c.resized(cutoff));
  return VectorField(std::move(comps), flags_);
}

double VectorField::hermitian_defect() const {
  double worst = 0.0;
  for (const auto& c : components_) worst = std::max(worst, c.hermitian_defect());
  return worst;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, c.max_abs());
  return m;
}

double VectorField::divergence_defect() const {
  if (components_.empty()) return 0.0;
  const ScalarField& first = components_.front();
  double worst_div = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const WaveVector k = first.wave(i);
    cplx div{};
    double amp = 0.0;
    for (int d = 0; d < dim(); ++d) {
      const cplx c = components_[static_cast<std::size_t>(d)].coeffs()[i];
      div += static_cast<double>(k[d]) * c;
      amp += std::norm(c);
    }
    worst_div = std::max(worst_div, std::abs(div));
    scale = std::max(scale, std::sqrt(static_cast<double>(norm_sq(k)) * amp));
  }
  return scale == 0.0 ? 0.0 : worst_div / scale;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (other.dim() != dim()) throw ArgumentError("dimension mismatch in field addition");
  for (int c = 0; c < dim(); ++c) (*this)[c] += other[c];
  flags_.zero_average = flags_.zero_average && other.flags_.zero_average;
  flags_.divergence_free = flags_.divergence_free && other.flags_.divergence_free;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (other.dim() != dim()) throw ArgumentError("dimension mismatch in field subtraction");
  for (int c = 0; c < dim(); ++c) (*this)[c] -= other[c];
  flags_.zero_average = flags_.zero_average && other.flags_.zero_average;
  flags_.divergence_free = flags_.divergence_free && other.flags_.divergence_free;
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : components_) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

namespace {

double coeff_norm(const VectorField& f) {
  std::vector<double> terms;
  for (int c = 0; c < f.dim(); ++c)
    for (const cplx& z : f[c].coeffs()) terms.push_back(std::norm(z));
  return std::sqrt(pairwise_sum(terms));
}

}  // namespace

double relative_residual(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw ArgumentError("dimension mismatch in residual");
  const double scale = std::max(coeff_norm(a), coeff_norm(b));
  if (scale == 0.0) return 0.0;
  return coeff_norm(a - b) / scale;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace salt
