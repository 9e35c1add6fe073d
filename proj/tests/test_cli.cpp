#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

namespace pareto_cfar {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pareto_cfar");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pareto_cfar_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(cli::kSeedEnvironment);
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv(cli::kSeedEnvironment);
  }
  fs::path dir_;
};

TEST_F(CliTest, ThresholdValues) {
  auto r = invoke({"threshold", "--kind", "case-a", "--pfa", "1e-4", "--n", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("threshold=35.999999999999993"), std::string::npos) << r.out;
  r = invoke({"threshold", "--kind", "case-b", "--pfa", "1e-4", "--n", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("threshold=75.999999999999986"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("regime=exact"), std::string::npos);
  r = invoke({"threshold", "--kind", "case-a", "--pfa", "0.5", "--n", "4"});
  EXPECT_NE(r.out.find("regime=approximate"), std::string::npos);
}

TEST_F(CliTest, ValidationErrorsExitOne) {
  EXPECT_EQ(invoke({"threshold", "--kind", "case-b", "--pfa", "0.9", "--n", "4"}).code, 1);
  EXPECT_EQ(invoke({"threshold", "--kind", "nope", "--pfa", "0.1", "--n", "4"}).code, 1);
  EXPECT_EQ(invoke({"threshold", "--kind", "case-a"}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"cfar-sweep", "--kind", "case-b", "--alpha", "5", "--h", "1", "--pfa", "1e-2", "--trials", "2e7"}).code,
            1);
  const auto sweep = invoke({"cfar-sweep", "--kind", "clairvoyant", "--alpha", "5", "--h", "1", "--pfa", "1e-2"});
  EXPECT_EQ(sweep.code, 1);
  EXPECT_NE(sweep.err.find("not adaptive"), std::string::npos) << sweep.err;
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cfar-sweep"), std::string::npos);
}

TEST_F(CliTest, Detect) {
  const auto r = invoke({"detect", "--kind", "case-b", "--pfa", "0.1", "--y", "7.38905609893065", "--x", "1,2.718281828459045"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("target_present=0"), std::string::npos) << r.out;
  const auto c = invoke({"detect", "--kind", "clairvoyant", "--pfa", "1e-5", "--alpha", "5", "--h", "0.7", "--y", "7.01"});
  EXPECT_NE(c.out.find("target_present=1"), std::string::npos) << c.out;
}

TEST_F(CliTest, RocWritesCsvAndSidecar) {
  const auto path = dir_ / "roc.csv";
  const auto r = invoke({"roc", "--kind", "case-a", "--n", "4", "--alpha", "5", "--rho", "2.5", "--h", "0.7",
                         "--pfa-grid", "1e-2,1e-1", "--trials", "1e5", "--mode", "both", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("max_sigma="), std::string::npos);
  const auto rows = parse_roc_csv(slurp(path));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].pdTheory.has_value());
  EXPECT_TRUE(rows[0].simulation.has_value());
  const auto meta = nlohmann::json::parse(slurp(path.string() + ".meta.json"));
  EXPECT_EQ(meta.at("seed"), 1);
  EXPECT_EQ(meta.at("window_size"), 4);
  EXPECT_FALSE(meta.contains("threads"));
}

TEST_F(CliTest, OutputIdenticalAcrossThreadCounts) {
  std::vector<std::string> contents;
  for (const char *threads : {"1", "3"}) {
    const auto path = dir_ / (std::string("sweep_") + threads + ".csv");
    const auto r = invoke({"cfar-sweep", "--kind", "case-b", "--alpha", "5,12", "--h", "0.5:2:1.5", "--pfa", "1e-2",
                           "--trials", "5e4", "--threads", threads, "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    contents.push_back(slurp(path) + slurp(path.string() + ".meta.json"));
  }
  EXPECT_EQ(contents[0], contents[1]);
}

TEST_F(CliTest, JsonFormat) {
  const auto r = invoke({"compare", "--n", "8", "--alpha", "5", "--rho", "2.5", "--pfa-grid", "1e-4,1e-3,1e-2",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto result = doc.at("result").get<ComparisonResult>();
  EXPECT_EQ(result.windowSize, 8u);
  EXPECT_EQ(result.gapA.size(), 3u);
}

TEST_F(CliTest, ConfigFilesAndOverrides) {
  const auto ini = dir_ / "roc.ini";
  std::ofstream(ini) << "[roc]\nkind = \"case-b\"\nn = 4\nalpha = 5\nrho = 2.5\npfa-grid = \"1e-2,1e-1\"\n"
                        "trials = \"2e4\"\nmode = \"theory\"\n";
  const auto fromIni = invoke({"--config", ini.string(), "roc"});
  ASSERT_EQ(fromIni.code, 0) << fromIni.err;
  EXPECT_EQ(parse_roc_csv(fromIni.out).size(), 2u);

  const auto json = dir_ / "roc.json";
  std::ofstream(json) << R"({"roc": {"kind": "case-b", "n": 4, "alpha": 5, "rho": 2.5,
                                    "pfa-grid": "1e-2,1e-1", "mode": "theory"}})";
  const auto fromJson = invoke({"--config", json.string(), "roc"});
  ASSERT_EQ(fromJson.code, 0) << fromJson.err;
  EXPECT_EQ(fromJson.out, fromIni.out);

  const auto overridden = invoke({"--config", json.string(), "roc", "--n", "8"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_NE(overridden.out, fromIni.out);
  EXPECT_EQ(parse_roc_csv(overridden.out)[0].pdTheory, case_b_pd(1e-2, 8, 5.0, 2.5));
}

TEST_F(CliTest, SeedFromEnvironment) {
  const std::vector<std::string> args{"roc",    "--kind",     "case-b",    "--n",      "4",    "--alpha", "5",
                                      "--rho",  "2.5",        "--pfa-grid", "1e-1",   "--trials", "2e4", "--mode",
                                      "simulation"};
  const auto base = invoke(args);
  setenv(cli::kSeedEnvironment, "7", 1);
  const auto seeded = invoke(args);
  auto explicitArgs = args;
  explicitArgs.insert(explicitArgs.end(), {"--seed", "7"});
  unsetenv(cli::kSeedEnvironment);
  const auto explicitSeed = invoke(explicitArgs);
  ASSERT_EQ(base.code, 0);
  EXPECT_NE(base.out, seeded.out);
  EXPECT_EQ(seeded.out, explicitSeed.out);
}

TEST_F(CliTest, IoErrorExitsThree) {
  const auto r = invoke({"compare", "--alpha", "5", "--rho", "2.5", "--pfa-grid", "1e-3", "--out",
                         (dir_ / "missing" / "x.csv").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("missing"), std::string::npos);
}

TEST_F(CliTest, ScanWithTargetAndProfile) {
  const auto out = dir_ / "scan.csv";
  const auto profile = dir_ / "profile.csv";
  const auto r = invoke({"scan", "--kind", "case-b", "--pfa", "1e-3", "--alpha", "5", "--cells", "2000", "--target",
                         "500:0.2", "--target", "1500:0.2", "--out", out.string(), "--profile-out", profile.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_scan_csv(slurp(out));
  EXPECT_EQ(rows.size(), 2000u - 12u);
  const auto reloaded = parse_profile_csv(slurp(profile));
  EXPECT_TRUE(reloaded.isTarget[500]);
  EXPECT_TRUE(reloaded.isTarget[1500]);
  EXPECT_EQ(invoke({"scan", "--kind", "case-b", "--pfa", "1e-3", "--alpha", "5", "--target", "5"}).code, 1);
}

TEST_F(CliTest, ScanClutterOnlyAssertion) {
  const auto r = invoke({"scan", "--kind", "case-a", "--pfa", "1e-2", "--alpha", "5", "--h", "0.7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("eligible=100000"), std::string::npos) << r.err;
}

TEST_F(CliTest, ValidateReportsAndNegativeControl) {
  const auto first = invoke({"validate"});
  const auto second = invoke({"validate"});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_TRUE(nlohmann::json::parse(first.out).at("passed").get<bool>());
  const auto forced = invoke({"validate", "--force-mismatch"});
  EXPECT_EQ(forced.code, 2);
  EXPECT_FALSE(nlohmann::json::parse(forced.out).at("passed").get<bool>());
}

}  // namespace
}  // namespace pareto_cfar
