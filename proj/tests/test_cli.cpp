#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "salt/cli.hpp"
#include "salt/snapshot.hpp"

using namespace salt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("salt_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines(const fs::path& file) {
  std::ifstream in(file);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
  const RunConfig c = parse_config({{"mode", "verify"}, {"N", "2"}, {"K", "4"}, {"seed", "1"}});
  EXPECT_EQ(c.mode, Mode::kVerify);
  EXPECT_EQ(c.K, 4);
  EXPECT_EQ(c.M, 2u);
  EXPECT_EQ(c.form, EquationForm::kVelocityIto);
  EXPECT_FALSE(c.n.has_value());
}

TEST(Config, VorticityNeedsThreeDimensions) {
  try {
    parse_config({{"form", "vorticity-ito"}, {"N", "2"}});
    FAIL() << "accepted vorticity form in 2D";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "form");
    EXPECT_NE(std::string(e.what()).find("N=3"), std::string::npos);
  }
  EXPECT_NO_THROW(parse_config({{"form", "vorticity-ito"}, {"N", "3"}}));
}

TEST(Config, FlagsOverrideFile) {
  const fs::path dir = scratch("precedence");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "run.cfg");
    out << "# comment\nmode = simulate\ndt = 1e-2\nt_end = 0.5\n";
  }
  const RunConfig c = parse_config(read_config_file(dir / "run.cfg"), {{"dt", "1e-3"}});
  EXPECT_EQ(c.dt, 1e-3);
  std::ostringstream echo;
  write_effective_config(echo, c);
  EXPECT_NE(echo.str().find("dt = 0.001\n"), std::string::npos);
  EXPECT_NE(echo.str().find("t_end = 0.5\n"), std::string::npos);
}

TEST(Config, EchoParsesBack) {
  const RunConfig c = parse_config({{"N", "3"}, {"n", "12"}, {"nu", "0.25"}, {"blowup_threshold", "40"}});
  std::ostringstream echo;
  write_effective_config(echo, c);
  KeyValues kv;
  std::istringstream in(echo.str());
  for (std::string l; std::getline(in, l);) {
    const auto eq = l.find(" = ");
    kv[l.substr(0, eq)] = l.substr(eq + 3);
  }
  std::ostringstream again;
  write_effective_config(again, parse_config(kv));
  EXPECT_EQ(echo.str(), again.str());
}

TEST(Config, Rejections) {
  const auto key_of = [](const KeyValues& kv) {
    try {
      parse_config(kv);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(key_of({{"colour", "blue"}}), "colour");
  EXPECT_EQ(key_of({{"dt", "fast"}}), "dt");
  EXPECT_EQ(key_of({{"K", "4.5"}}), "K");
  EXPECT_EQ(key_of({{"dt", "-1"}}), "dt");
  EXPECT_EQ(key_of({{"N", "4"}}), "N");
  EXPECT_EQ(key_of({{"M", "-2"}}), "M");
  EXPECT_EQ(key_of({{"n", "100000"}}), "n");
  EXPECT_EQ(key_of({{"mode", "dance"}}), "mode");
  EXPECT_EQ(key_of({{"init", "snapshot"}}), "restart");
  EXPECT_THROW(read_config_file("/nonexistent/salt.cfg"), ConfigError);
}

TEST(Run, VerifyPasses) {
  const fs::path dir = scratch("verify");
  std::ostringstream log;
  const int status = run(parse_config({{"mode", "verify"}, {"N", "2"}, {"K", "4"}, {"seed", "1"}, {"out", dir}}), log);
  EXPECT_EQ(status, kExitSuccess);
  EXPECT_TRUE(fs::exists(dir / "lemma_report.csv"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir / "config.effective"));
}

TEST(Run, TaylorGreenSimulationDecaysMonotonically) {
  const fs::path dir = scratch("tg");
  std::ostringstream log;
  const RunConfig c = parse_config({{"mode", "simulate"},
                                    {"init", "taylor-green"},
                                    {"M", "0"},
                                    {"t_end", "0.5"},
                                    {"stride", "250"},
                                    {"out", dir.string()}});
  ASSERT_EQ(run(c, log), kExitSuccess);
  const auto rows = lines(dir / "diagnostics.csv");
  ASSERT_EQ(rows.size(), 502u);
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double l2 = std::stod(rows[i].substr(rows[i].find(',') + 1));
    EXPECT_LT(l2, last);
    last = l2;
  }
  EXPECT_TRUE(fs::exists(dir / "snapshot_00000000.salt"));
  EXPECT_TRUE(fs::exists(dir / "snapshot_00000250.salt"));
  EXPECT_TRUE(fs::exists(dir / "snapshot_00000500.salt"));
}

TEST(Run, IdenticalConfigsGiveIdenticalDiagnostics) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  const KeyValues base{{"mode", "simulate"}, {"K", "3"}, {"t_end", "0.1"}, {"dt", "1e-2"}, {"nu", "0.1"}};
  KeyValues ka = base, kb = base;
  ka["out"] = a.string();
  kb["out"] = b.string();
  run(parse_config(ka), log);
  run(parse_config(kb), log);
  EXPECT_EQ(lines(a / "diagnostics.csv"), lines(b / "diagnostics.csv"));
}

TEST(Run, CorruptedRestartSnapshotRejected) {
  const fs::path dir = scratch("restart");
  std::ostringstream log;
  ASSERT_EQ(run(parse_config({{"mode", "simulate"}, {"K", "2"}, {"t_end", "0.02"}, {"dt", "1e-2"}, {"stride", "1"},
                              {"out", dir.string()}}),
                log),
            kExitSuccess);
  const fs::path snap = dir / "snapshot_00000002.salt";
  std::string bytes;
  {
    std::ifstream in(snap, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  bytes[30] ^= 0x40;
  const fs::path bad = dir / "corrupt.salt";
  std::ofstream(bad, std::ios::binary) << bytes;
  const RunConfig c = parse_config({{"mode", "simulate"}, {"K", "2"}, {"init", "snapshot"}, {"restart", bad.string()},
                                    {"out", (dir / "again").string()}});
  try {
    run(c, log);
    FAIL() << "corrupted snapshot accepted";
  } catch (const SnapshotError& e) {
    EXPECT_NE(std::string(e.what()).find("Hermitian"), std::string::npos);
  }
  const RunConfig ok = parse_config({{"mode", "simulate"}, {"K", "2"}, {"init", "snapshot"}, {"restart", snap.string()},
                                     {"t_end", "0.01"}, {"dt", "1e-2"}, {"out", (dir / "ok").string()}});
  EXPECT_EQ(run(ok, log), kExitSuccess);
}

TEST(Run, EnsembleWritesPerSeedDirectories) {
  const fs::path dir = scratch("ensemble");
  std::ostringstream log;
  const RunConfig c = parse_config({{"mode", "simulate"}, {"K", "2"}, {"t_end", "0.02"}, {"dt", "1e-2"},
                                    {"ensemble", "3"}, {"seed", "5"}, {"out", dir.string()}});
  EXPECT_EQ(run(c, log), kExitSuccess);
  for (const char* s : {"seed_5", "seed_6", "seed_7"}) EXPECT_TRUE(fs::exists(dir / s / "diagnostics.csv")) << s;
}

TEST(Run, OverflowExitCode) {
  const fs::path dir = scratch("overflow");
  std::ostringstream log;
  const RunConfig c = parse_config({{"mode", "simulate"}, {"K", "4"}, {"M", "0"}, {"nu", "0"}, {"amplitude", "1e3"},
                                    {"dt", "10"}, {"t_end", "2000"}, {"stride", "1000"}, {"out", dir.string()}});
  EXPECT_EQ(run(c, log), kExitOverflow);
}
