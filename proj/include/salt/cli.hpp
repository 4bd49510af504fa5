#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "salt/galerkin.hpp"

namespace salt {

enum class Mode { kSimulate, kVerify, kProbe, kTaylorGreen };

const char* mode_name(Mode mode);

/// Rejected configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class InitialState { kRandom, kTaylorGreen, kSnapshot };

struct RunConfig {
  Mode mode = Mode::kSimulate;
  int N = 2;
  int K = 4;
  std::optional<std::size_t> n;  ///< Galerkin rank; all modes of the cube when unset
  double nu = 0.01;
  EquationForm form = EquationForm::kVelocityIto;
  std::size_t M = 2;
  double gamma = 1.0;
  int K_xi = 2;
  double dt = 1e-3;
  double t_end = 5.0;
  double blowup_threshold = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
  std::filesystem::path out = "salt_out";
  std::size_t stride = 100;
  std::size_t ensemble = 1;
  InitialState init = InitialState::kRandom;
  std::filesystem::path restart;  ///< snapshot loaded when init = snapshot
  double amplitude = 1.0;         ///< ‖x₀‖ of a random initial state
  std::size_t members = 50;       ///< probe ensemble size
};

using KeyValues = std::map<std::string, std::string>;

/// key = value lines; blank lines and lines starting with '#' are skipped.
KeyValues read_config_file(const std::filesystem::path& path);

/// Applies file entries, then flag entries over them, then validates.
RunConfig parse_config(const KeyValues& file, const KeyValues& flags = {});

/// Every field as key = value, in a form parse_config accepts back.
void write_effective_config(std::ostream& out, const RunConfig& config);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitOverflow = 3;

/// Executes one configuration and writes its artifacts under config.out; returns the exit status.
int run(const RunConfig& config, std::ostream& log);

}  // namespace salt
