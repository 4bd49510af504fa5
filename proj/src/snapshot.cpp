#include "salt/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace salt {

namespace {

constexpr std::array<char, 9> kMagic{'S', 'A', 'L', 'T', 'S', 'P', 'E', 'C', '1'};

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw SnapshotError("truncated snapshot");
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const VectorField& f) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.cutoff()));
  std::uint32_t flags = 0;
  if (f.flags().zero_average) flags |= 1u;
  if (f.flags().divergence_free) flags |= 2u;
  put<std::uint32_t>(out, flags);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.dim()));
  for (int c = 0; c < f.dim(); ++c)
    for (const cplx& z : f[c].coeffs()) {
      put<float>(out, static_cast<float>(z.real()));
      put<float>(out, static_cast<float>(z.imag()));
    }
  if (!out) throw SnapshotError("failed writing snapshot");
}

VectorField read_snapshot(std::istream& in) {
  std::array<char, 9> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw SnapshotError("bad snapshot magic");
  const auto dim = get<std::uint32_t>(in);
  const auto cutoff = get<std::uint32_t>(in);
  const auto flags = get<std::uint32_t>(in);
  const auto count = get<std::uint32_t>(in);
  if (dim != 2 && dim != 3) throw SnapshotError("snapshot dimension must be 2 or 3");
  if (count != dim) throw SnapshotError("snapshot component count must equal N");
  if (cutoff > 4096) throw SnapshotError("snapshot cutoff implausibly large");
  VectorField f(static_cast<int>(dim), static_cast<int>(cutoff),
                {.zero_average = (flags & 1u) != 0, .divergence_free = (flags & 2u) != 0});
  for (int c = 0; c < f.dim(); ++c)
    for (cplx& z : f[c].coeffs()) {
      const float re = get<float>(in);
      const float im = get<float>(in);
      z = cplx(re, im);
    }
  const double scale = std::max(1.0, f.max_abs());
  const double defect = f.hermitian_defect();
  if (defect > kSnapshotHermitianTolerance * scale) {
    std::ostringstream msg;
    msg << "snapshot violates Hermitian symmetry (defect " << defect << ", allowed " << kSnapshotHermitianTolerance * scale
        << ")";
    throw SnapshotError(msg.str());
  }
  return f;
}

void save_snapshot(const std::filesystem::path& path, const VectorField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SnapshotError("cannot open " + path.string() + " for writing");
  write_snapshot(out, f);
}

VectorField load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path.string());
  return read_snapshot(in);
}

}  // namespace salt
