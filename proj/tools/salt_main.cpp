#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "salt/cli.hpp"
#include "salt/snapshot.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Galerkin solver and verification suite for stochastic Navier-Stokes with transport noise"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> flags;
  // Flag name -> config key.
  const std::map<std::string, std::string> keys{
      {"--seed", "seed"}, {"--N", "N"},         {"--K", "K"},
      {"--n", "n"},       {"--nu", "nu"},       {"--form", "form"},
      {"--M", "M"},       {"--gamma", "gamma"}, {"--K-xi", "K_xi"},
      {"--dt", "dt"},     {"--t-end", "t_end"}, {"--out", "out"},
      {"--blowup-threshold", "blowup_threshold"}, {"--stride", "stride"},
      {"--ensemble", "ensemble"}, {"--init", "init"}, {"--restart", "restart"},
      {"--amplitude", "amplitude"}, {"--members", "members"}};

  const std::vector<std::pair<std::string, std::string>> modes{
      {"simulate", "Integrate the Galerkin system and write diagnostics and snapshots"},
      {"verify", "Run the identity and tail checks"},
      {"probe", "Fit constants for every inequality probe"},
      {"taylor-green", "Deterministic Taylor-Green decay benchmark"}};
  for (const auto& [name, description] : modes) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "key = value configuration file");
    for (const auto& [flag, key] : keys)
      sub->add_option_function<std::string>(flag, [&flags, key = key](const std::string& v) { flags[key] = v; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return salt::kExitConfigError;
  }
  flags["mode"] = app.get_subcommands().front()->get_name();

  try {
    const salt::KeyValues file = config_path.empty() ? salt::KeyValues{} : salt::read_config_file(config_path);
    const salt::RunConfig config = salt::parse_config(file, flags);
    return salt::run(config, std::cout);
  } catch (const salt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return salt::kExitConfigError;
  } catch (const salt::SnapshotError& e) {
    std::cerr << "snapshot rejected: " << e.what() << '\n';
    return salt::kExitConfigError;
  } catch (const salt::ArgumentError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return salt::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return salt::kExitVerificationFailure;
  }
}
