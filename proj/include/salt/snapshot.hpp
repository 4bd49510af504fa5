#pragma once

#include <filesystem>
#include <iosfwd>

#include "salt/field.hpp"

namespace salt {

/// Snapshot layout, all little-endian:
///
///   char[9]  "SALTSPEC1"
///   uint32   N
///   uint32   K
///   uint32   flags  (bit 0 zero-average, bit 1 divergence-free)
///   uint32   component count
///   then per component, (2K+1)^N complex64 values (float32 re, float32 im)
///   in lexicographic k order, k_1 most significant.
///
/// Loaders reject files whose coefficients violate Hermitian symmetry by more than
/// 1e-9 relative to the largest coefficient.
class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSnapshotHermitianTolerance = 1e-9;

void write_snapshot(std::ostream& out, const VectorField& f);
VectorField read_snapshot(std::istream& in);

void save_snapshot(const std::filesystem::path& path, const VectorField& f);
VectorField load_snapshot(const std::filesystem::path& path);

}  // namespace salt
