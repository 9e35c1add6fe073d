#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "pareto_cfar/derived_law.hpp"
#include "pareto_cfar/detectors.hpp"
#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/montecarlo.hpp"
#include "pareto_cfar/rangeprofile.hpp"
#include "pareto_cfar/stats.hpp"

namespace pareto_cfar {
namespace {

ErrorKind kind_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &err) {
    return err.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Io;
}

ProfileConfig clutter_only(std::size_t cells, std::uint64_t seed) {
  ProfileConfig config;
  config.cellCount = cells;
  config.clutter = ParetoParams(5.0, 0.7);
  config.seed = seed;
  return config;
}

TEST(GenerateProfile, ClutterFollowsParetoLaw) {
  const auto profile = generate_profile(clutter_only(100'000, 3));
  ASSERT_EQ(profile.intensities.size(), 100'000u);
  std::vector<double> logs;
  logs.reserve(profile.intensities.size());
  for (const double v : profile.intensities) {
    ASSERT_GE(v, 0.7);
    logs.push_back(std::log(v / 0.7));
  }
  const DerivedLaw law(ExpRate{5.0});
  const double d = stats::ks_statistic(logs, [&](double x) { return law.cdf(x); });
  EXPECT_LT(d, stats::ks_critical_value(1e5, 0.01));
  EXPECT_FALSE(profile.interferingTargets);
  EXPECT_EQ(std::count(profile.isTarget.begin(), profile.isTarget.end(), true), 0);
}

TEST(GenerateProfile, Reproducible) {
  auto config = clutter_only(1000, 99);
  config.targets = {{100, 2.0}, {600, 1.0}};
  const auto a = generate_profile(config);
  const auto b = generate_profile(config);
  EXPECT_EQ(a.intensities, b.intensities);
  EXPECT_EQ(a.isTarget, b.isTarget);
  EXPECT_TRUE(a.isTarget[100]);
  EXPECT_TRUE(a.isTarget[600]);
  config.seed = 100;
  EXPECT_NE(generate_profile(config).intensities, a.intensities);
}

TEST(GenerateProfile, TargetWithClutterShapeIsIndistinguishable) {
  constexpr std::size_t kDraws = 20'000;
  std::vector<double> targetCells;
  std::vector<double> clutterCells;
  for (std::size_t r = 0; r < kDraws; ++r) {
    auto config = clutter_only(9, 500 + r);
    config.targets = {{4, 5.0}};
    const auto profile = generate_profile(config);
    targetCells.push_back(profile.intensities[4]);
    clutterCells.push_back(profile.intensities[1]);
  }
  const double d = stats::ks_two_sample_statistic(targetCells, clutterCells);
  EXPECT_LT(d, stats::ks_two_sample_critical_value(kDraws, kDraws, 0.01));
}

TEST(GenerateProfile, TargetExceedanceMatchesClosedForm) {
  // Pr(Pa(2.5, h) > clutter 1 - 1e-3 quantile) = (1e-3)^(2.5/5).
  constexpr std::uint64_t kDraws = 200'000;
  const double quantile = 0.7 * std::pow(1e-3, -1.0 / 5.0);
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < kDraws; ++r) {
    auto config = clutter_only(1, 10'000 + r);
    config.targets = {{0, 2.5}};
    hits += generate_profile(config).intensities[0] > quantile ? 1 : 0;
  }
  const auto e = TrialEstimate::from_counts(hits, kDraws);
  EXPECT_TRUE(e.contains(std::sqrt(1e-3))) << e.probability;
}

TEST(GenerateProfile, InterferenceFlag) {
  auto config = clutter_only(200, 1);
  config.targets = {{50, 2.0}, {52, 2.0}};  // inside the guard band
  EXPECT_FALSE(generate_profile(config).interferingTargets);
  config.targets = {{50, 2.0}, {55, 2.0}};  // inside the reference window
  EXPECT_TRUE(generate_profile(config).interferingTargets);
  config.targets = {{50, 2.0}, {57, 2.0}};  // beyond guard + half window
  EXPECT_FALSE(generate_profile(config).interferingTargets);
}

TEST(GenerateProfile, RejectsBadConfig) {
  auto config = clutter_only(10, 1);
  config.targets = {{10, 2.0}};
  EXPECT_EQ(kind_of([&] { generate_profile(config); }), ErrorKind::InvalidParameters);
  config.targets = {{3, 6.0}};
  EXPECT_EQ(kind_of([&] { generate_profile(config); }), ErrorKind::InvalidParameters);
  config.targets = {{3, 2.0}, {3, 1.0}};
  EXPECT_EQ(kind_of([&] { generate_profile(config); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { generate_profile(clutter_only(0, 1)); }), ErrorKind::InvalidParameters);
}

TEST(AssembleWindow, LeadingThenLaggingSkippingGuards) {
  std::vector<double> profile(20);
  std::iota(profile.begin(), profile.end(), 1.0);
  const auto input = assemble_window(profile, 10, 3, 2);
  EXPECT_EQ(input.cut, 11.0);
  EXPECT_EQ(input.window, (std::vector<double>{6.0, 7.0, 8.0, 14.0, 15.0, 16.0}));
  EXPECT_EQ(assemble_window(profile, 5, 3, 2).window.front(), 1.0);
  EXPECT_EQ(kind_of([&] { assemble_window(profile, 4, 3, 2); }), ErrorKind::WindowTooLarge);
  EXPECT_EQ(kind_of([&] { assemble_window(profile, 15, 3, 2); }), ErrorKind::WindowTooLarge);
}

TEST(ScanProfile, EdgeCellsCarryNoDecision) {
  const auto profile = generate_profile(clutter_only(40, 2));
  const auto scan = scan_profile(profile.intensities, DetectorSpec::case_b(1e-2, 8), 2);
  EXPECT_EQ(scan.decision_count(), 40u - 12u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_FALSE(scan.decisions[i].has_value());
    EXPECT_TRUE(std::isnan(scan.statistics[i]));
    EXPECT_FALSE(scan.decisions[39 - i].has_value());
  }
  EXPECT_TRUE(scan.decisions[6].has_value());
  EXPECT_EQ(scan.decisions[6]->statistic, scan.statistics[6]);
}

TEST(ScanProfile, ConstantProfileNeverDetects) {
  const std::vector<double> profile(500, 3.0);
  const auto scan = scan_profile(profile, DetectorSpec::case_b(0.5, 8), 2);
  EXPECT_EQ(scan.detection_count(), 0u);
  for (const auto &d : scan.decisions) {
    if (d) {
      EXPECT_EQ(d->statistic, 0.0);
    }
  }
}

TEST(ScanProfile, ClutterOnlyFalseAlarmRate) {
  const auto profile = generate_profile(clutter_only(100'012, 17));
  for (const auto &spec : {DetectorSpec::case_a(1e-2, 8, 0.7), DetectorSpec::case_b(1e-2, 8)}) {
    const auto scan = scan_profile(profile.intensities, spec, kDefaultGuardCells);
    ASSERT_GE(scan.decision_count(), 100'000u);
    const auto e = TrialEstimate::from_counts(scan.detection_count(), scan.decision_count());
    EXPECT_TRUE(e.contains(1e-2)) << to_string(spec.kind()) << ' ' << e.probability;
  }
}

TEST(ScanProfile, PlantedTargetDetectionRate) {
  constexpr std::uint64_t kProfiles = 40'000;
  const auto spec = DetectorSpec::case_b(1e-2, 8);
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < kProfiles; ++r) {
    auto config = clutter_only(13, 70'000 + r);
    config.targets = {{6, 1.0}};
    const auto profile = generate_profile(config);
    const auto scan = scan_profile(profile.intensities, spec, 2, EngineOptions{1});
    hits += scan.decisions[6]->targetPresent ? 1 : 0;
  }
  const auto e = TrialEstimate::from_counts(hits, kProfiles);
  EXPECT_TRUE(e.contains(case_b_pd(1e-2, 8, 5.0, 1.0))) << e.probability;
}

TEST(ScanProfile, IndependentOfThreadCount) {
  auto config = clutter_only(30'001, 5);
  config.targets = {{1000, 1.0}, {20'000, 2.0}};
  const auto profile = generate_profile(config);
  const auto spec = DetectorSpec::case_a(1e-3, 8, 0.7);
  const auto reference = scan_profile(profile.intensities, spec, 2, EngineOptions{1});
  for (const unsigned threads : {2u, 5u}) {
    const auto other = scan_profile(profile.intensities, spec, 2, EngineOptions{threads});
    EXPECT_EQ(other.decisions, reference.decisions);
  }
}

TEST(ScanProfile, Rejections) {
  const std::vector<double> shortProfile(12, 1.0);
  EXPECT_EQ(kind_of([&] { scan_profile(shortProfile, DetectorSpec::case_b(1e-2, 8), 2); }),
            ErrorKind::WindowTooLarge);
  const std::vector<double> profile(100, 1.0);
  EXPECT_EQ(kind_of([&] { scan_profile(profile, DetectorSpec::case_b(1e-2, 7), 2); }), ErrorKind::SpecMismatch);
}

}  // namespace
}  // namespace pareto_cfar
