#include "mmsim/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mmsim/config.hpp"
#include "mmsim/ledger_io.hpp"

using namespace mmsim;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mmsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mmsim_test_" + name);
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(cli, simulate_local_spacelike_ledger) {
  const Result r = cli({"simulate", "--model", "local", "--phase", "1.5707963", "--distance", "1.0", "--trials",
                        "1000000", "--seed", "42"});
  ASSERT_EQ(r.status, 0) << r.err;
  const TrialLedger ledger = parse_ledger(r.out);
  EXPECT_EQ(ledger.trials, 1'000'000u);
  EXPECT_EQ(ledger.seed, 42u);
  for (auto c : ledger.counts) EXPECT_NEAR(static_cast<double>(c), 250'000.0, 1732.0);
}

TEST(cli, simulate_csv_format) {
  const Result r = cli({"simulate", "--model", "quantum", "--phase", "1.5707963", "--trials", "1000", "--seed", "1",
                        "--format", "csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "outcome,count,trials,rate,ci_low,ci_high");
  EXPECT_NE(r.out.find("\nBoth,0,1000,0,0,"), std::string::npos);
  EXPECT_NE(r.out.find("\nNone,0,1000,0,0,"), std::string::npos);
}

TEST(cli, ether_design_point) {
  const Result r = cli({"ether-design", "--target-shift", "0.5235988", "--v", "30000", "--lambda", "900e-9", "--c",
                        "3e8"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("L = 7.5 m\n"), std::string::npos) << r.out;
}

TEST(cli, sweep_figure_table) {
  const auto path = temp_file("fig3.csv");
  const Result r = cli({"sweep", "--models", "quantum,local,ether", "--grid", "181", "--out", path.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::istringstream csv(read(path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "phase_rad,model,regime,p_plus_only,p_minus_only,p_both,p_none,marginal_plus,marginal_minus");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 181u * 3u * 2u);
  std::filesystem::remove(path);
}

TEST(cli, dump_config_reparses_to_identical_fingerprint) {
  const std::vector<std::string> args{"simulate", "--model", "ether", "--phase-deg", "90", "--arm-length", "7.5",
                                      "--paper-constants", "--trials", "5000", "--seed", "9", "--shards", "2"};
  std::vector<std::string> dump = args;
  dump.push_back("--dump-config");
  const Result d = cli(dump);
  ASSERT_EQ(d.status, 0) << d.err;
  const auto path = temp_file("dump.cfg");
  write(path, d.out);

  const ExperimentConfig from_flags = experiment_from(KeyValues::parse(d.out));
  const Result from_file = cli({"simulate", "--config", path.string()});
  const Result direct = cli(args);
  ASSERT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_EQ(from_file.out, direct.out);
  EXPECT_EQ(parse_ledger(from_file.out).fingerprint, fingerprint(from_flags));
  std::filesystem::remove(path);
}

TEST(cli, flags_override_config_file) {
  const auto path = temp_file("override.cfg");
  write(path, "model = local\nphase = 1.5707963267948966\ndistance = 0.1\ntrials = 10000\nseed = 3\n");
  const Result timelike = cli({"simulate", "--config", path.string()});
  ASSERT_EQ(timelike.status, 0) << timelike.err;
  EXPECT_EQ(parse_ledger(timelike.out).count(JointOutcome::Both), 0u);
  const Result spacelike = cli({"simulate", "--config", path.string(), "--distance", "5"});
  ASSERT_EQ(spacelike.status, 0) << spacelike.err;
  EXPECT_GT(parse_ledger(spacelike.out).count(JointOutcome::Both), 0u);
  std::filesystem::remove(path);
}

TEST(cli, identical_invocations_are_byte_identical) {
  const std::vector<std::string> args{"simulate", "--model", "local", "--phase", "1.2", "--distance", "2",
                                      "--trials", "200000", "--seed", "11", "--shards", "4"};
  EXPECT_EQ(cli(args).out, cli(args).out);
  const std::vector<std::string> sweep{"sweep", "--grid", "31"};
  EXPECT_EQ(cli(sweep).out, cli(sweep).out);
}

TEST(cli, discriminate_recorded_ledger) {
  const auto path = temp_file("quantum.ledger");
  ASSERT_EQ(cli({"simulate", "--model", "quantum", "--phase", "1.5707963267948966", "--trials", "1000", "--seed",
                 "42", "--out", path.string()})
                .status,
            0);
  const Result r = cli({"discriminate", "--ledger", path.string(), "--phase", "1.5707963267948966",
                        "--hypothesis-a", "quantum", "--hypothesis-b", "local:spacelike"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("method = exact-coincidence\n"), std::string::npos);
  EXPECT_NE(r.out.find("verdict = FavorsA\n"), std::string::npos);
  EXPECT_NE(r.out.find("p_value = 1.15149854012e-125\n"), std::string::npos) << r.out;  // 0.75^1000

  // Quantum data cannot contain coincidences; under the ether model neither can it, so
  // a tampered ledger with one coincidence is impossible under both.
  std::string tampered = read(path);
  const auto plus = tampered.find("PlusOnly = ");
  const auto eol = tampered.find('\n', plus);
  const auto count = std::stoull(tampered.substr(plus + 11, eol - plus - 11));
  tampered.replace(plus, eol - plus, "PlusOnly = " + std::to_string(count - 1));
  tampered.replace(tampered.find("Both = 0"), 8, "Both = 1");
  write(path, tampered);
  const Result bad = cli({"discriminate", "--ledger", path.string(), "--phase", "1.5707963267948966",
                          "--hypothesis-a", "quantum", "--hypothesis-b", "ether", "--arm-length", "7.5"});
  EXPECT_EQ(bad.status, 2) << bad.out;
  EXPECT_NE(bad.err.find("Both"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(cli, power_examples) {
  Result r = cli({"power", "--hypothesis-a", "quantum", "--hypothesis-b", "local:spacelike", "--phase",
                  "1.5707963267948966", "--significance", "1e-6", "--power", "0.99"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("n = 49\n"), std::string::npos) << r.out;
  r = cli({"power", "--hypothesis-a", "quantum", "--hypothesis-b", "local:spacelike", "--phase",
           "1.5707963267948966", "--significance", "0.05"});
  EXPECT_NE(r.out.find("n = 11\n"), std::string::npos) << r.out;
  r = cli({"power", "--hypothesis-a", "quantum", "--hypothesis-b", "quantum", "--phase", "1"});
  EXPECT_EQ(r.status, 1);
}

TEST(cli, configuration_errors_exit_1_with_key) {
  Result r = cli({"simulate", "--model", "local", "--phase", "1", "--trials", "10", "--bogus", "3"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);

  r = cli({"simulate", "--model", "local", "--phase", "1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("trials"), std::string::npos);

  r = cli({"simulate", "--model", "local", "--phase", "one", "--trials", "10"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("phase"), std::string::npos);

  const auto path = temp_file("bad.cfg");
  write(path, "model = local\nphase = 1\ntrials = 10\nwidth = 3\n");
  r = cli({"simulate", "--config", path.string()});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("width"), std::string::npos);
  std::filesystem::remove(path);

  r = cli({"ether-design", "--target-shift", "0.5", "--v", "0"});
  EXPECT_EQ(r.status, 1);
  r = cli({});
  EXPECT_EQ(r.status, 1);
}
