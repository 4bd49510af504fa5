#include "salt/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "salt/correlation.hpp"
#include "salt/experiments.hpp"
#include "salt/noise.hpp"
#include "salt/parallel.hpp"
#include "salt/probes.hpp"
#include "salt/random.hpp"
#include "salt/snapshot.hpp"
#include "salt/verify.hpp"

namespace salt {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected a number, got '" + text + "'");
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return parse_number<double>(key, text);
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  if (!text.empty() && text.front() == '-') throw ConfigError(key, "must be non-negative");
  return parse_number<std::size_t>(key, text);
}

Mode parse_mode(const std::string& text) {
  if (text == "simulate") return Mode::kSimulate;
  if (text == "verify") return Mode::kVerify;
  if (text == "probe") return Mode::kProbe;
  if (text == "taylor-green") return Mode::kTaylorGreen;
  throw ConfigError("mode", "expected simulate, verify, probe or taylor-green, got '" + text + "'");
}

EquationForm parse_form(const std::string& text) {
  for (EquationForm f : {EquationForm::kVelocityIto, EquationForm::kVelocityStrat, EquationForm::kVorticityIto})
    if (text == form_name(f)) return f;
  throw ConfigError("form", "expected velocity-ito, velocity-strat or vorticity-ito, got '" + text + "'");
}

const char* init_name(InitialState s) {
  switch (s) {
    case InitialState::kRandom: return "random";
    case InitialState::kTaylorGreen: return "taylor-green";
    case InitialState::kSnapshot: return "snapshot";
  }
  return "?";
}

InitialState parse_init(const std::string& text) {
  for (InitialState s : {InitialState::kRandom, InitialState::kTaylorGreen, InitialState::kSnapshot})
    if (text == init_name(s)) return s;
  throw ConfigError("init", "expected random, taylor-green or snapshot, got '" + text + "'");
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "mode") c.mode = parse_mode(value);
  else if (key == "N") c.N = parse_number<int>(key, value);
  else if (key == "K") c.K = parse_number<int>(key, value);
  else if (key == "n") c.n = parse_count(key, value);
  else if (key == "nu") c.nu = parse_real(key, value);
  else if (key == "form") c.form = parse_form(value);
  else if (key == "M") c.M = parse_count(key, value);
  else if (key == "gamma") c.gamma = parse_real(key, value);
  else if (key == "K_xi") c.K_xi = parse_number<int>(key, value);
  else if (key == "dt") c.dt = parse_real(key, value);
  else if (key == "t_end") c.t_end = parse_real(key, value);
  else if (key == "blowup_threshold") c.blowup_threshold = parse_real(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "out") c.out = value;
  else if (key == "stride") c.stride = parse_count(key, value);
  else if (key == "ensemble") c.ensemble = parse_count(key, value);
  else if (key == "init") c.init = parse_init(value);
  else if (key == "restart") c.restart = value;
  else if (key == "amplitude") c.amplitude = parse_real(key, value);
  else if (key == "members") c.members = parse_count(key, value);
  else throw ConfigError(key, "unknown key");
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

void validate(const RunConfig& c) {
  require(c.N == 2 || c.N == 3, "N", "must be 2 or 3");
  require(c.K >= 1, "K", "must be at least 1");
  require(c.form != EquationForm::kVorticityIto || c.N == 3, "form", "vorticity-ito requires N=3");
  if (c.n) {
    require(*c.n >= 1, "n", "must be positive");
    const std::size_t available = enumerate_basis(c.N, c.K).size();
    require(*c.n <= available, "n", "exceeds the " + std::to_string(available) + " modes available at K");
  }
  require(c.nu >= 0.0 && std::isfinite(c.nu), "nu", "must be finite and non-negative");
  require(c.gamma > 0.0, "gamma", "must be positive");
  require(c.K_xi >= 1, "K_xi", "must be at least 1");
  require(c.dt > 0.0 && std::isfinite(c.dt), "dt", "must be positive");
  require(c.t_end > 0.0 && std::isfinite(c.t_end), "t_end", "must be positive");
  require(c.blowup_threshold > 0.0, "blowup_threshold", "must be positive");
  require(c.stride >= 1, "stride", "must be at least 1");
  require(c.ensemble >= 1, "ensemble", "must be at least 1");
  require(c.amplitude > 0.0 && std::isfinite(c.amplitude), "amplitude", "must be positive");
  require(c.members >= 1, "members", "must be at least 1");
  require(c.init != InitialState::kTaylorGreen || c.N == 2, "init", "taylor-green requires N=2");
  require(c.init != InitialState::kSnapshot || !c.restart.empty(), "restart", "init=snapshot needs a snapshot path");
  require(c.mode != Mode::kProbe || c.M >= 1, "M", "probe mode needs at least one noise field");
}

std::string format_real(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  std::ostringstream text;
  write_effective_config(text, c);
  std::istringstream lines(text.str());
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find('=');
    j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return j;
}

double norm(std::span<const double> x) { return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)); }

Coords initial_state(const RunConfig& c, const GalerkinBasis& basis) {
  switch (c.init) {
    case InitialState::kTaylorGreen:
      return basis.project(taylor_green_field(basis.field_cutoff()));
    case InitialState::kSnapshot: {
      const VectorField f = load_snapshot(c.restart);
      if (f.dim() != c.N) throw ConfigError("restart", "snapshot dimension does not match N");
      return basis.project(f);
    }
    case InitialState::kRandom: break;
  }
  Coords x = basis.project(random_field({.dim = c.N, .cutoff = basis.field_cutoff(), .decay = 2.0, .seed = c.seed}));
  const double scale = c.amplitude / norm(x);
  for (double& v : x) v *= scale;
  return x;
}

std::string snapshot_name(std::size_t step) {
  std::ostringstream s;
  s << "snapshot_" << std::setw(8) << std::setfill('0') << step << ".salt";
  return s.str();
}

int run_simulate(const RunConfig& c, std::ostream& log, nlohmann::json& manifest) {
  const GalerkinBasis basis(c.N, c.K, c.n);
  const CorrelationSet xis =
      build_correlation_set({.dim = c.N, .count = c.M, .decay_rate = c.gamma, .cutoff = c.K_xi, .seed = c.seed});
  const GalerkinSystem system(basis, c.form, c.nu, xis);
  const Coords x0 = initial_state(c, basis);
  const IntegratorConfig ic{.scheme = c.form == EquationForm::kVelocityStrat ? Scheme::kHeunStratonovich
                                                                             : Scheme::kEulerMaruyama,
                            .dt = c.dt,
                            .t_end = c.t_end,
                            .blowup_threshold = c.blowup_threshold,
                            .store_stride = c.stride};
  const NoisePath path = NoisePath::generate(c.seed, c.dt, ic.step_count(), c.M);
  save_noise_path(c.out / "noise_path.bin", path);
  {
    std::ofstream out(c.out / "basis.csv");
    basis.write_manifest(out);
  }

  const IntegrationResult r = integrate(x0, system, ic, path);
  {
    std::ofstream out(c.out / "diagnostics.csv");
    write_diagnostics_csv(out, r.diagnostics);
  }
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    const auto step = static_cast<std::size_t>(std::llround(r.times[i] / c.dt));
    save_snapshot(c.out / snapshot_name(step), basis.to_field(r.trajectory[i]));
  }

  manifest["outcome"] = outcome_name(r.outcome);
  manifest["steps_taken"] = r.steps_taken;
  manifest["basis_size"] = basis.size();
  manifest["scheme"] = scheme_name(ic.scheme);
  manifest["noise_tail_estimate"] = xis.tail_estimate();
  manifest["final_blowup_functional"] = r.diagnostics.back().blowup_partial;
  log << "simulate: " << r.steps_taken << " steps, outcome " << outcome_name(r.outcome) << '\n';
  if (r.outcome == Outcome::kOverflow) {
    manifest["overflow_step"] = *r.overflow_step;
    log << "numeric overflow at step " << *r.overflow_step << '\n';
    return kExitOverflow;
  }
  return kExitSuccess;
}

int run_verify(const RunConfig& c, std::ostream& log, nlohmann::json& manifest) {
  const LemmaReport report = lemma_suite({.seed = c.seed, .dim = c.N, .cutoff = c.K});
  std::ofstream out(c.out / "lemma_report.csv");
  report.write_csv(out);
  report.write_summary(log);
  manifest["passed"] = report.passed();
  return report.passed() ? kExitSuccess : kExitVerificationFailure;
}

int run_probe(const RunConfig& c, std::ostream& log, nlohmann::json& manifest) {
  const ProbeEnsemble ensemble{.seed = c.seed,
                               .members = c.members,
                               .cutoffs = {c.K, 2 * c.K, 4 * c.K},
                               .nu = c.nu,
                               .noise_count = c.M,
                               .decay_rate = c.gamma,
                               .xi_cutoff = c.K_xi};
  std::vector<ProbeReport> reports;
  bool ok = true;
  for (const std::string& id : probe_ids()) {
    reports.push_back(bound_probe(id, ensemble));
    const ProbeReport& r = reports.back();
    ok = ok && r.finite() && r.stability <= 2.0 && (!r.sign || r.sign->negative_at_largest);
  }
  std::ofstream csv(c.out / "probes.csv");
  write_probe_csv(csv, reports);
  std::ofstream summary(c.out / "probe_summary.txt");
  write_probe_summary(summary, reports);
  write_probe_summary(log, reports);
  manifest["passed"] = ok;
  return ok ? kExitSuccess : kExitVerificationFailure;
}

int run_taylor_green(const RunConfig& c, std::ostream& log, nlohmann::json& manifest) {
  TaylorGreenSpec spec{.cutoff = std::max(2, c.K), .nu = c.nu, .dt = c.dt, .t_end = c.t_end};
  const DecayResult r = taylor_green(spec);
  const double expected = 4.0 * c.nu;
  const double rel = std::abs(r.fitted_rate - expected) / expected;
  const bool passed = rel <= 0.01;
  {
    std::ofstream out(c.out / "diagnostics.csv");
    write_diagnostics_csv(out, r.run.diagnostics);
  }
  std::ofstream out(c.out / "taylor_green.csv");
  out << "fitted_rate,expected_rate,relative_error,max_functional_ratio,passed\n"
      << std::setprecision(17) << r.fitted_rate << ',' << expected << ',' << rel << ',' << r.max_functional_ratio << ','
      << (passed ? "true" : "false") << '\n';
  log << "taylor-green: fitted rate " << r.fitted_rate << " vs 4nu = " << expected << " (relative error " << rel
      << ") " << (passed ? "PASS" : "FAIL") << '\n';
  manifest["outcome"] = outcome_name(r.run.outcome);
  manifest["passed"] = passed;
  return passed ? kExitSuccess : kExitVerificationFailure;
}

int run_single(const RunConfig& c, std::ostream& log) {
  std::filesystem::create_directories(c.out);
  {
    std::ofstream out(c.out / "config.effective");
    write_effective_config(out, c);
  }
  const auto start = std::chrono::steady_clock::now();
  nlohmann::json manifest;
  manifest["config"] = config_json(c);
  manifest["seed"] = c.seed;
  manifest["version"] = kVersion;
  manifest["compiler"] = __VERSION__;
  manifest["mode"] = mode_name(c.mode);

  int status = kExitSuccess;
  switch (c.mode) {
    case Mode::kSimulate: status = run_simulate(c, log, manifest); break;
    case Mode::kVerify: status = run_verify(c, log, manifest); break;
    case Mode::kProbe: status = run_probe(c, log, manifest); break;
    case Mode::kTaylorGreen: status = run_taylor_green(c, log, manifest); break;
  }
  manifest["exit_status"] = status;
  manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream out(c.out / "manifest.json");
  out << manifest.dump(2) << '\n';
  return status;
}

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kSimulate: return "simulate";
    case Mode::kVerify: return "verify";
    case Mode::kProbe: return "probe";
    case Mode::kTaylorGreen: return "taylor-green";
  }
  return "?";
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  KeyValues out;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", "line " + std::to_string(number) + " is not of the form key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig parse_config(const KeyValues& file, const KeyValues& flags) {
  RunConfig c;
  for (const auto& [key, value] : file) apply(c, key, value);
  for (const auto& [key, value] : flags) apply(c, key, value);
  validate(c);
  return c;
}

void write_effective_config(std::ostream& out, const RunConfig& c) {
  out << "mode = " << mode_name(c.mode) << '\n'
      << "N = " << c.N << '\n'
      << "K = " << c.K << '\n';
  if (c.n) out << "n = " << *c.n << '\n';
  out << "nu = " << format_real(c.nu) << '\n'
      << "form = " << form_name(c.form) << '\n'
      << "M = " << c.M << '\n'
      << "gamma = " << format_real(c.gamma) << '\n'
      << "K_xi = " << c.K_xi << '\n'
      << "dt = " << format_real(c.dt) << '\n'
      << "t_end = " << format_real(c.t_end) << '\n'
      << "blowup_threshold = " << format_real(c.blowup_threshold) << '\n'
      << "seed = " << c.seed << '\n'
      << "out = " << c.out.string() << '\n'
      << "stride = " << c.stride << '\n'
      << "ensemble = " << c.ensemble << '\n'
      << "init = " << init_name(c.init) << '\n';
  if (!c.restart.empty()) out << "restart = " << c.restart.string() << '\n';
  out << "amplitude = " << format_real(c.amplitude) << '\n'
      << "members = " << c.members << '\n';
}

int run(const RunConfig& config, std::ostream& log) {
  if (config.ensemble == 1) return run_single(config, log);
  std::vector<int> status(config.ensemble, kExitSuccess);
  std::vector<std::ostringstream> logs(config.ensemble);
  parallel_for(config.ensemble, [&](std::size_t i) {
    RunConfig member = config;
    member.ensemble = 1;
    member.seed = config.seed + i;
    member.out = config.out / ("seed_" + std::to_string(member.seed));
    status[i] = run_single(member, logs[i]);
  });
  for (std::size_t i = 0; i < config.ensemble; ++i) log << "[seed " << config.seed + i << "] " << logs[i].str();
  return *std::max_element(status.begin(), status.end());
}

}  // namespace salt
