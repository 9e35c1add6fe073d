#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pareto_cfar/detectors.hpp"
#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/montecarlo.hpp"
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

// Multi-point checks use a 4-sigma band so the family-wise false-failure
// rate stays below 1e-3.
bool within_four_sigma(const TrialEstimate &e, double p) {
  return std::abs(e.probability - p) <= 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(e.trials));
}

TEST(TrialEstimate, FromCounts) {
  const auto e = TrialEstimate::from_counts(30, 1000);
  EXPECT_DOUBLE_EQ(e.probability, 0.03);
  EXPECT_LE(e.ciLow, e.probability);
  EXPECT_GE(e.ciHigh, e.probability);
  EXPECT_TRUE(e.contains(0.03));
  EXPECT_FALSE(e.contains(0.2));
}

TEST(EstimatePfa, CaseAMatchesDesign) {
  const auto spec = DetectorSpec::case_a(0.1, 4, 0.7);
  const auto e = estimate_pfa(spec, ParetoParams(5.0, 0.7), 1'000'000, 5);
  EXPECT_TRUE(e.contains(0.1)) << e.probability << " [" << e.ciLow << ", " << e.ciHigh << "]";
}

TEST(EstimatePfa, SingleTrialIsBernoulli) {
  const auto spec = DetectorSpec::case_b(0.5, 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = estimate_pfa(spec, ParetoParams(5.0, 0.7), 1, seed);
    EXPECT_TRUE(e.probability == 0.0 || e.probability == 1.0);
    EXPECT_EQ(e.trials, 1u);
  }
}

TEST(EstimatePfa, IdenticalAcrossThreadCounts) {
  const ParetoParams clutter(6.0, 1.3);
  for (const auto &spec : {DetectorSpec::case_a(0.02, 6, 1.3), DetectorSpec::case_b(0.02, 6),
                           DetectorSpec::clairvoyant(0.02, clutter, 6)}) {
    const auto reference = estimate_pfa(spec, clutter, 200'001, 77, EngineOptions{1});
    for (const unsigned threads : {2u, 3u, 7u, 16u}) {
      EXPECT_EQ(estimate_pfa(spec, clutter, 200'001, 77, EngineOptions{threads}), reference)
          << to_string(spec.kind()) << " threads=" << threads;
    }
  }
}

TEST(EstimatePfa, SeedChangesOutcome) {
  const auto spec = DetectorSpec::case_b(0.1, 4);
  const auto a = estimate_pfa(spec, ParetoParams(5.0, 1.0), 100'000, 1);
  const auto b = estimate_pfa(spec, ParetoParams(5.0, 1.0), 100'000, 2);
  EXPECT_NE(a.hits, b.hits);
}

TEST(EstimatePfa, RejectsScaleMismatchAndZeroTrials) {
  EXPECT_EQ(kind_of([] { estimate_pfa(DetectorSpec::case_a(0.1, 4, 0.7), ParetoParams(5.0, 1.0), 100, 1); }),
            ErrorKind::SpecMismatch);
  EXPECT_EQ(kind_of([] { estimate_pfa(DetectorSpec::case_b(0.1, 4), ParetoParams(5.0, 1.0), 0, 1); }),
            ErrorKind::InvalidParameters);
}

TEST(EstimatePfa, WilsonCoverageOverRepetitions) {
  // 20 independent runs; a 99% interval misses the truth in more than two
  // of them with probability below 0.1%.
  const auto spec = DetectorSpec::case_b(0.05, 8);
  int misses = 0;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const auto e = estimate_pfa(spec, ParetoParams(9.0, 2.0), 40'000, 1000 + rep);
    misses += e.contains(0.05) ? 0 : 1;
  }
  EXPECT_LE(misses, 2);
}

TEST(EstimatePd, TargetEqualToClutterGivesPfa) {
  const ParetoParams clutter(5.0, 0.7);
  const auto e = estimate_pd(DetectorSpec::case_b(0.05, 4), clutter, clutter, 400'000, 9);
  EXPECT_TRUE(e.contains(0.05)) << e.probability;
}

TEST(EstimatePd, MatchesClosedForm) {
  const ParetoParams clutter(5.0, 0.7);
  const ParetoParams target(2.5, 0.7);
  const auto a = estimate_pd(DetectorSpec::case_a(1e-2, 4, 0.7), clutter, target, 400'000, 10);
  EXPECT_TRUE(a.contains(case_a_pd(1e-2, 4, 5.0, 2.5))) << a.probability;
  const auto b = estimate_pd(DetectorSpec::case_b(1e-2, 4), clutter, target, 400'000, 11);
  EXPECT_TRUE(b.contains(case_b_pd(1e-2, 4, 5.0, 2.5))) << b.probability;
  const auto c = estimate_pd(DetectorSpec::clairvoyant(1e-2, clutter), clutter, target, 400'000, 12);
  EXPECT_TRUE(c.contains(clairvoyant_pd(1e-2, 5.0, 2.5))) << c.probability;
}

TEST(EstimatePd, RejectsInvalidTarget) {
  const ParetoParams clutter(5.0, 0.7);
  EXPECT_EQ(kind_of([&] { estimate_pd(DetectorSpec::case_b(0.1, 4), clutter, ParetoParams(6.0, 0.7), 10, 1); }),
            ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { estimate_pd(DetectorSpec::case_b(0.1, 4), clutter, ParetoParams(2.0, 0.9), 10, 1); }),
            ErrorKind::InvalidParameters);
}

TEST(CfarSweep, CaseBIsFlat) {
  const std::vector<double> alphas{5.0, 12.0};
  const std::vector<double> hs{0.5, 2.0};
  const auto sweep = cfar_sweep(DetectorSpec::case_b(1e-2, 8), alphas, hs, 200'000, 3);
  ASSERT_EQ(sweep.axis.size(), 4u);
  ASSERT_EQ(sweep.estimates.size(), 4u);
  EXPECT_EQ(sweep.axis[1], (SweepPoint{5.0, 2.0}));
  for (const auto &e : sweep.estimates) EXPECT_TRUE(within_four_sigma(e, 1e-2)) << e.probability;
  EXPECT_LT(sweep_flatness_z(sweep), 4.0);
}

TEST(CfarSweep, CaseAIsFlatAcrossShape) {
  const std::vector<double> alphas{5.0, 8.0, 12.0};
  const std::vector<double> hs{0.7};
  const auto sweep = cfar_sweep(DetectorSpec::case_a(1e-2, 8, 0.7), alphas, hs, 200'000, 4);
  for (const auto &e : sweep.estimates) EXPECT_TRUE(within_four_sigma(e, 1e-2)) << e.probability;
}

TEST(CfarSweep, SinglePointReducesToEstimatePfa) {
  const std::vector<double> alphas{7.0};
  const std::vector<double> hs{1.5};
  const auto spec = DetectorSpec::case_b(0.01, 4);
  const auto sweep = cfar_sweep(spec, alphas, hs, 50'000, 21);
  ASSERT_EQ(sweep.estimates.size(), 1u);
  EXPECT_EQ(sweep.estimates[0], estimate_pfa(spec, ParetoParams(7.0, 1.5), 50'000, 21));
}

TEST(CfarSweep, Rejections) {
  const std::vector<double> alphas{5.0};
  const std::vector<double> hs{0.7, 1.0};
  const std::vector<double> oneH{0.7};
  EXPECT_EQ(kind_of([&] { cfar_sweep(DetectorSpec::case_a(1e-2, 4, 0.7), alphas, hs, 100'000, 1); }),
            ErrorKind::SpecMismatch);
  EXPECT_EQ(kind_of([&] {
              cfar_sweep(DetectorSpec::clairvoyant(1e-2, ParetoParams(5.0, 0.7)), alphas, oneH, 100'000, 1);
            }),
            ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { cfar_sweep(DetectorSpec::case_b(1e-4, 4), alphas, oneH, 100'000, 1); }),
            ErrorKind::InvalidPfa);
}

TEST(RocCurve, ClairvoyantHalfRatioIsSquareRoot) {
  const std::vector<double> grid{1e-6, 1e-4, 1e-2, 0.5};
  const auto curve = roc_curve(DetectorSpec::clairvoyant(1e-3, ParetoParams(6.0, 1.0)), ParetoParams(6.0, 1.0),
                               ParetoParams(3.0, 1.0), grid, RocSource::Theory, 0, 0);
  ASSERT_EQ(curve.points.size(), grid.size());
  for (const auto &p : curve.points) EXPECT_NEAR(p.pd, std::sqrt(p.pfa), 1e-15);
}

TEST(RocCurve, TheoryNondecreasing) {
  std::vector<double> grid;
  for (double lp = -8.0; lp <= -0.5; lp += 0.1) grid.push_back(std::pow(10.0, lp));
  const ParetoParams clutter(12.0, 0.7);
  const ParetoParams target(2.5, 0.7);
  for (const auto &spec : {DetectorSpec::case_a(1e-3, 4, 0.7), DetectorSpec::case_b(1e-3, 4)}) {
    const auto curve = roc_curve(spec, clutter, target, grid, RocSource::Theory, 0, 0);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      EXPECT_GE(curve.points[i].pd, curve.points[i - 1].pd);
    }
  }
}

TEST(RocCurve, SinglePointAndOrdering) {
  const std::vector<double> one{1e-2};
  const std::vector<double> unordered{1e-2, 1e-3};
  const ParetoParams clutter(5.0, 0.7);
  const ParetoParams target(2.5, 0.7);
  const auto spec = DetectorSpec::case_b(1e-2, 4);
  EXPECT_EQ(roc_curve(spec, clutter, target, one, RocSource::Theory, 0, 0).points.size(), 1u);
  EXPECT_EQ(kind_of([&] { roc_curve(spec, clutter, target, unordered, RocSource::Theory, 0, 0); }),
            ErrorKind::InvalidParameters);
}

TEST(RocCurve, SimulationAgreesWithTheory) {
  const std::vector<double> grid{1e-2, 1e-1};
  const ParetoParams clutter(5.0, 0.7);
  const ParetoParams target(2.5, 0.7);
  const auto spec = DetectorSpec::case_a(1e-2, 4, 0.7);
  const auto theory = roc_curve(spec, clutter, target, grid, RocSource::Theory, 200'000, 8);
  const auto sim = roc_curve(spec, clutter, target, grid, RocSource::Simulation, 200'000, 8);
  EXPECT_LE(max_sigma_deviation(theory, sim), 3.0);
  ASSERT_TRUE(sim.points[0].estimate.has_value());
  EXPECT_EQ(sim.points[0].estimate->trials, 200'000u);
}

TEST(Compare, CurvesCollapseWhenTargetMatchesClutter) {
  const std::vector<double> grid{1e-4, 1e-2, 0.3};
  const auto result = compare_to_clairvoyant(4, ParetoParams(5.0, 0.7), ParetoParams(5.0, 0.7), grid,
                                             RocSource::Theory, 0, 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(result.clairvoyant.points[i].pd, grid[i], 1e-15);
    EXPECT_NEAR(result.caseA.points[i].pd, grid[i], 1e-15);
    EXPECT_NEAR(result.caseB.points[i].pd, grid[i], 1e-15);
  }
}

TEST(Compare, GapShrinksWithWindow) {
  const std::vector<double> grid{1e-3};
  const ParetoParams clutter(5.0, 0.7);
  const ParetoParams target(2.5, 0.7);
  const auto four = compare_to_clairvoyant(4, clutter, target, grid, RocSource::Theory, 0, 0);
  const auto eight = compare_to_clairvoyant(8, clutter, target, grid, RocSource::Theory, 0, 0);
  EXPECT_NEAR(four.gapA[0], 0.023309110616271961, 1e-15);
  EXPECT_NEAR(eight.gapA[0], 0.016284209064880095, 1e-15);
  EXPECT_LT(eight.gapA[0], four.gapA[0]);
}

}  // namespace
}  // namespace pareto_cfar
