#include "salt/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace salt {

namespace {

// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One r2c/c2r plan pair with its own aligned buffers. Plans are always executed on
// these buffers, so a given (dim, R) always runs the same codelets and results are
// bit-reproducible.
class TransformPlan {
 public:
  TransformPlan(int dim, int resolution) : dim_(dim), resolution_(resolution) {
    const auto r = static_cast<std::size_t>(resolution);
    real_count_ = dim == 2 ? r * r : r * r * r;
    const std::size_t half = r / 2 + 1;
    complex_count_ = dim == 2 ? r * half : r * r * half;
    real_ = fftw_alloc_real(real_count_);
    spec_ = fftw_alloc_complex(complex_count_);
    int n[3] = {resolution, resolution, resolution};
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c(dim, n, real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r(dim, n, spec_, real_, FFTW_ESTIMATE);
  }

  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;

  ~TransformPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }

  int dim() const { return dim_; }
  int resolution() const { return resolution_; }
  double* real() { return real_; }
  fftw_complex* spec() { return spec_; }
  std::size_t real_count() const { return real_count_; }
  std::size_t complex_count() const { return complex_count_; }

  // Index into the half spectrum for a wave vector with k_N >= 0.
  std::size_t spec_index(const WaveVector& k) const {
    const int r = resolution_;
    const auto wrap = [r](int v) { return static_cast<std::size_t>(v < 0 ? v + r : v); };
    const std::size_t half = static_cast<std::size_t>(r / 2 + 1);
    if (dim_ == 2) return wrap(k[0]) * half + static_cast<std::size_t>(k[1]);
    return (wrap(k[0]) * static_cast<std::size_t>(r) + wrap(k[1])) * half +
           static_cast<std::size_t>(k[2]);
  }

  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

 private:
  int dim_;
  int resolution_;
  std::size_t real_count_ = 0;
  std::size_t complex_count_ = 0;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

TransformPlan& plan_for(int dim, int resolution) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<TransformPlan>> cache;
  auto& slot = cache[{dim, resolution}];
  if (!slot) slot = std::make_unique<TransformPlan>(dim, resolution);
  return *slot;
}

bool is_smooth(int n) {
  for (int p : {2, 3, 5})
    while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

int alias_free_resolution(int band) {
  int r = std::max(2 * band + 1, 2);
  while (!is_smooth(r)) ++r;
  return r;
}

GridSample to_grid(const ScalarField& f, int resolution) {
  if (resolution < 2 * f.cutoff() + 1)
    throw ArgumentError("grid resolution must be at least 2K+1");
  TransformPlan& plan = plan_for(f.dim(), resolution);
  std::fill_n(reinterpret_cast<double*>(plan.spec()), 2 * plan.complex_count(), 0.0);
  const int last = f.dim() - 1;
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const WaveVector k = f.wave(i);
    if (k[last] < 0) continue;
    const std::size_t s = plan.spec_index(k);
    plan.spec()[s][0] = coeffs[i].real();
    plan.spec()[s][1] = coeffs[i].imag();
  }
  plan.backward();
  GridSample g;
  g.dim = f.dim();
  g.resolution = resolution;
  g.values.assign(plan.real(), plan.real() + plan.real_count());
  return g;
}

ScalarField from_grid(const GridSample& g, int cutoff) {
  if (g.resolution < 2 * cutoff + 1)
    throw ArgumentError("grid resolution too small for requested cutoff");
  TransformPlan& plan = plan_for(g.dim, g.resolution);
  std::copy(g.values.begin(), g.values.end(), plan.real());
  plan.forward();
  const double norm = 1.0 / static_cast<double>(plan.real_count());
  ScalarField out(g.dim, cutoff);
  const int last = g.dim - 1;
  auto coeffs = out.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const WaveVector k = out.wave(i);
    if (k[last] < 0) continue;
    const std::size_t s = plan.spec_index(k);
    coeffs[i] = cplx(plan.spec()[s][0], plan.spec()[s][1]) * norm;
  }
  // Mirror into k_N < 0 and symmetrise the k_N = 0 plane.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const WaveVector k = out.wave(i);
    const std::size_t j = out.index(negate(k));
    if (k[last] < 0) {
      coeffs[i] = std::conj(coeffs[j]);
    } else if (k[last] == 0 && i < j) {
      const cplx avg = 0.5 * (coeffs[i] + std::conj(coeffs[j]));
      coeffs[i] = avg;
      coeffs[j] = std::conj(avg);
    } else if (i == j) {
      coeffs[i] = cplx(coeffs[i].real(), 0.0);
    }
  }
  return out;
}

}  // namespace salt
