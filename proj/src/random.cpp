#include "salt/random.hpp"

#include <cmath>

#include "salt/operators.hpp"
#include "salt/spectral.hpp"

namespace salt {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t encode(const WaveVector& k) {
  const auto shift = [](int v) { return static_cast<std::uint64_t>(v + 1024) & 0x7ffull; };
  return (shift(k[0]) << 22) | (shift(k[1]) << 11) | shift(k[2]);
}

// Lexicographically positive half of the lattice: first non-zero entry is positive.
bool is_positive_half(const WaveVector& k) {
  for (int v : k)
    if (v != 0) return v > 0;
  return false;
}

ScalarField random_scalar_impl(int dim, int cutoff, std::uint64_t seed, std::uint64_t member,
                               std::uint64_t component, double decay, bool keep_mean) {
  const CounterRng rng(seed);
  const auto tag = static_cast<std::uint64_t>(RngStream::kField);
  ScalarField f(dim, cutoff);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const WaveVector k = f.wave(i);
    const double amp = std::pow(1.0 + static_cast<double>(norm_sq(k)), -0.5 * decay);
    const std::uint64_t key = encode(k);
    if (is_positive_half(k)) {
      const double re = rng.normal({tag, member, key, component, 0});
      const double im = rng.normal({tag, member, key, component, 1});
      f[k] = amp * cplx(re, im) / std::sqrt(2.0);
      f[negate(k)] = std::conj(f[k]);
    } else if (norm_sq(k) == 0 && keep_mean) {
      f[k] = cplx(rng.normal({tag, member, key, component, 0}), 0.0);
    }
  }
  return f;
}

}  // namespace

std::uint64_t CounterRng::bits(std::initializer_list<std::uint64_t> key) const {
  std::uint64_t h = splitmix(seed_ ^ 0x5a17ull);
  for (std::uint64_t part : key) h = splitmix(h ^ splitmix(part));
  return h;
}

double CounterRng::uniform(std::initializer_list<std::uint64_t> key) const {
  return (static_cast<double>(bits(key) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::initializer_list<std::uint64_t> key) const {
  // Two independent uniforms from the same key, distinguished by a trailing salt.
  std::uint64_t h1 = splitmix(seed_ ^ 0x5a17ull);
  for (std::uint64_t part : key) h1 = splitmix(h1 ^ splitmix(part));
  const std::uint64_t h2 = splitmix(h1 ^ 0xb0c5ull);
  const double u1 = (static_cast<double>(h1 >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(h2 >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

ScalarField random_scalar(int dim, int cutoff, std::uint64_t seed, std::uint64_t member, double decay) {
  return random_scalar_impl(dim, cutoff, seed, member, 7, decay, true);
}

VectorField random_field(const RandomFieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::kGradient: {
      // Decay of the potential is one order higher so ∇φ matches the requested spectrum.
      const ScalarField phi =
          random_scalar_impl(spec.dim, spec.cutoff, spec.seed, spec.member, 9, spec.decay + 1.0, false);
      return gradient(phi);
    }
    case FieldKind::kGeneral:
    case FieldKind::kDivergenceFree: {
      const bool general = spec.kind == FieldKind::kGeneral;
      std::vector<ScalarField> comps;
      for (int c = 0; c < spec.dim; ++c)
        comps.push_back(random_scalar_impl(spec.dim, spec.cutoff, spec.seed, spec.member,
                                           static_cast<std::uint64_t>(c), spec.decay, general));
      VectorField f(std::move(comps));
      if (general) return f;
      return leray_project(f).solenoidal;
    }
  }
  throw ArgumentError("unknown field kind");
}

}  // namespace salt
