#ifndef PARETO_CFAR_MONTECARLO_HPP_
#define PARETO_CFAR_MONTECARLO_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pareto_cfar/detectors.hpp"
#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/pareto_model.hpp"
#include "pareto_cfar/random.hpp"
#include "pareto_cfar/stats.hpp"

namespace pareto_cfar {

/// Monte Carlo estimate of a probability with its Wilson 99% interval.
struct TrialEstimate {
  double probability = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double ciLow = 0.0;
  double ciHigh = 0.0;

  static TrialEstimate from_counts(std::uint64_t hits, std::uint64_t trials) {
    const stats::Interval ci = stats::wilson_interval(hits, trials);
    return {static_cast<double>(hits) / static_cast<double>(trials), trials, hits, ci.low,
            ci.high};
  }

  bool contains(double p) const noexcept { return ciLow <= p && p <= ciHigh; }

  friend bool operator==(const TrialEstimate &, const TrialEstimate &) = default;
};

struct EngineOptions {
  unsigned threads = 0;  // 0: one worker per hardware thread
};

/// Below this many expected hits a confidence-interval check carries no
/// information, so grids with pfa < kMinExpectedHits / trials are rejected.
inline constexpr double kMinExpectedHits = 100.0;

/// Default trial budgets.
inline constexpr std::uint64_t kDefaultTrials = 1'000'000;
inline constexpr std::uint64_t kSweepTrialCap = 10'000'000;
inline constexpr std::uint64_t kFullScaleTrials = 100'000'000;

/// Window size used for CFAR sweeps when none is given.
inline constexpr std::size_t kDefaultSweepWindow = 8;

namespace detail {

inline unsigned resolve_threads(unsigned requested, std::uint64_t work) {
  unsigned threads = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(work, 1)));
}

/// Runs `makeWorker()(index)` for every index in [0, count), splitting the
/// range into contiguous blocks, one per thread. Each thread gets its own
/// worker so scratch buffers are never shared.
template <typename MakeWorker>
std::uint64_t parallel_count(std::uint64_t count, unsigned threads, MakeWorker &&makeWorker) {
  threads = resolve_threads(threads, count);
  if (threads == 1) {
    auto worker = makeWorker();
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < count; ++i) hits += worker(i) ? 1 : 0;
    return hits;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = count * t / threads;
      const std::uint64_t end = count * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          auto worker = makeWorker();
          std::uint64_t hits = 0;
          for (std::uint64_t i = begin; i < end; ++i) hits += worker(i) ? 1 : 0;
          partial[t] = hits;
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto &error : errors) {
    if (error) std::rethrow_exception(error);
  }
  std::uint64_t total = 0;
  for (const std::uint64_t hits : partial) total += hits;
  return total;
}

/// Trial layout: window cells x_1..x_n first, then the CUT, all from one
/// stream keyed by (seed, trial index).
inline TrialEstimate run_trials(const DetectorSpec &spec, const ParetoParams &clutter,
                                const ParetoParams &cutLaw, std::uint64_t trials,
                                std::uint64_t seed, const EngineOptions &options) {
  if (trials < 1) fail(ErrorKind::InvalidParameters, "trials must be >= 1");
  if (spec.kind() == DetectorKind::CaseA && *spec.known_scale() != clutter.scale()) {
    fail(ErrorKind::SpecMismatch, "case-a detector scale differs from the clutter scale");
  }
  const Detector detector(spec);
  const std::size_t n = spec.window_size();
  const std::uint64_t hits = parallel_count(trials, options.threads, [&] {
    return [&detector, &clutter, &cutLaw, seed, window = std::vector<double>(n)](
               std::uint64_t index) mutable {
      SplitMix64 rng = trial_stream(seed, index);
      for (double &x : window) x = sample_pareto(clutter, rng);
      const double cut = sample_pareto(cutLaw, rng);
      return detector.decide(cut, window).targetPresent;
    };
  });
  return TrialEstimate::from_counts(hits, trials);
}

inline void check_grid_pfa(double pfa, std::uint64_t trials) {
  if (pfa * static_cast<double>(trials) < kMinExpectedHits) {
    fail(ErrorKind::InvalidPfa,
         "pfa " + std::to_string(pfa) + " with " + std::to_string(trials) +
             " trials expects fewer than 100 hits; raise trials or pfa");
  }
}

}  // namespace detail

/// Empirical false-alarm probability: CUT and window both drawn from `clutter`.
inline TrialEstimate estimate_pfa(const DetectorSpec &spec, const ParetoParams &clutter,
                                  std::uint64_t trials, std::uint64_t seed,
                                  const EngineOptions &options = {}) {
  return detail::run_trials(spec, clutter, clutter, trials, seed, options);
}

/// Empirical detection probability: CUT from `target`, window from `clutter`.
inline TrialEstimate estimate_pd(const DetectorSpec &spec, const ParetoParams &clutter,
                                 const ParetoParams &target, std::uint64_t trials,
                                 std::uint64_t seed, const EngineOptions &options = {}) {
  if (target.shape() > clutter.shape()) {
    detail::fail(ErrorKind::InvalidParameters, "target shape must not exceed clutter shape");
  }
  if (target.scale() != clutter.scale()) {
    detail::fail(ErrorKind::InvalidParameters, "target and clutter must share the scale");
  }
  return detail::run_trials(spec, clutter, target, trials, seed, options);
}

// ---------------------------------------------------------------------------
// CFAR sweeps

struct SweepPoint {
  double alpha = 0.0;
  double h = 0.0;

  friend bool operator==(const SweepPoint &, const SweepPoint &) = default;
};

struct SweepResult {
  DetectorKind kind = DetectorKind::CaseA;
  std::size_t windowSize = 0;
  double nominal = 0.0;
  std::vector<SweepPoint> axis;
  std::vector<TrialEstimate> estimates;

  friend bool operator==(const SweepResult &, const SweepResult &) = default;
};

/// Empirical pfa over the alpha x h grid (alpha-major). Point k uses seed + k.
/// Case (a) knows h, so its h grid must be the detector's scale alone.
inline SweepResult cfar_sweep(const DetectorSpec &spec, std::span<const double> alphaGrid,
                              std::span<const double> hGrid, std::uint64_t trials,
                              std::uint64_t seed, const EngineOptions &options = {}) {
  if (alphaGrid.empty() || hGrid.empty()) {
    detail::fail(ErrorKind::InvalidParameters, "sweep grids must be nonempty");
  }
  if (spec.kind() == DetectorKind::Clairvoyant) {
    detail::fail(ErrorKind::InvalidParameters,
                 "the clairvoyant detector is not adaptive; sweep case-a or case-b");
  }
  if (spec.kind() == DetectorKind::CaseA &&
      (hGrid.size() != 1 || hGrid.front() != *spec.known_scale())) {
    detail::fail(ErrorKind::SpecMismatch,
                 "case-a sweeps take a single h equal to the detector's known scale");
  }
  detail::check_grid_pfa(spec.design_pfa(), trials);
  SweepResult result{spec.kind(), spec.window_size(), spec.design_pfa(), {}, {}};
  std::uint64_t k = 0;
  for (const double alpha : alphaGrid) {
    for (const double h : hGrid) {
      result.axis.push_back({alpha, h});
      result.estimates.push_back(
          estimate_pfa(spec, ParetoParams(alpha, h), trials, seed + k, options));
      ++k;
    }
  }
  return result;
}

/// Largest pairwise two-proportion z statistic across a sweep (max vs min
/// estimate). Values below the 1% critical point mean the sweep is flat.
inline double sweep_flatness_z(const SweepResult &sweep) {
  if (sweep.estimates.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(
      sweep.estimates.begin(), sweep.estimates.end(),
      [](const TrialEstimate &a, const TrialEstimate &b) { return a.probability < b.probability; });
  return stats::two_proportion_z(hi->hits, hi->trials, lo->hits, lo->trials);
}

// ---------------------------------------------------------------------------
// ROC curves

enum class RocSource { Theory, Simulation };

inline std::string_view to_string(RocSource source) {
  return source == RocSource::Theory ? "theory" : "simulation";
}

struct RocPoint {
  double pfa = 0.0;
  double pd = 0.0;
  std::optional<TrialEstimate> estimate;  // simulation curves only

  friend bool operator==(const RocPoint &, const RocPoint &) = default;
};

struct RocCurve {
  RocSource source = RocSource::Theory;
  DetectorKind kind = DetectorKind::CaseA;
  std::size_t windowSize = 0;
  double alpha = 0.0;
  double rho = 0.0;
  double h = 0.0;
  std::vector<RocPoint> points;

  friend bool operator==(const RocCurve &, const RocCurve &) = default;
};

/// ROC over `pfaGrid` for the detector family of `spec` (its design pfa is
/// replaced per point). Simulation point k uses seed + k.
inline RocCurve roc_curve(const DetectorSpec &spec, const ParetoParams &clutter,
                          const ParetoParams &target, std::span<const double> pfaGrid,
                          RocSource source, std::uint64_t trials, std::uint64_t seed,
                          const EngineOptions &options = {}) {
  if (pfaGrid.empty()) detail::fail(ErrorKind::InvalidParameters, "pfa grid must be nonempty");
  for (std::size_t i = 1; i < pfaGrid.size(); ++i) {
    if (!(pfaGrid[i] > pfaGrid[i - 1])) {
      detail::fail(ErrorKind::InvalidParameters, "pfa grid must be strictly increasing");
    }
  }
  detail::check_shapes(clutter.shape(), target.shape());
  RocCurve curve{source,          spec.kind(),    spec.window_size(), clutter.shape(),
                 target.shape(), clutter.scale(), {}};
  std::uint64_t k = 0;
  for (const double pfa : pfaGrid) {
    const DetectorSpec pointSpec = spec.with_pfa(pfa);
    if (source == RocSource::Theory) {
      curve.points.push_back({pfa, theoretical_pd(pointSpec, clutter.shape(), target.shape()),
                              std::nullopt});
    } else {
      detail::check_grid_pfa(pfa, trials);
      const TrialEstimate estimate =
          estimate_pd(pointSpec, clutter, target, trials, seed + k, options);
      curve.points.push_back({pfa, estimate.probability, estimate});
    }
    ++k;
  }
  return curve;
}

/// Largest |pd_sim - pd_theory| in units of the binomial standard deviation
/// sqrt(pd (1 - pd) / N) of the theory value.
inline double max_sigma_deviation(const RocCurve &theory, const RocCurve &simulation) {
  if (theory.points.size() != simulation.points.size()) {
    detail::fail(ErrorKind::InvalidParameters, "curves are not aligned");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < theory.points.size(); ++i) {
    const double pd = theory.points[i].pd;
    const auto &estimate = simulation.points[i].estimate;
    if (!estimate) detail::fail(ErrorKind::InvalidParameters, "simulation point lacks estimate");
    const double sigma = std::sqrt(pd * (1.0 - pd) / static_cast<double>(estimate->trials));
    const double diff = std::abs(estimate->probability - pd);
    worst = std::max(worst, sigma > 0.0 ? diff / sigma : (diff > 0.0 ? 1e300 : 0.0));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Clairvoyant-bound comparison

struct ComparisonResult {
  std::size_t windowSize = 0;
  RocCurve clairvoyant;
  RocCurve caseA;
  RocCurve caseB;
  std::vector<double> gapA;  // pd_clairvoyant - pd_case_a per grid point
  std::vector<double> gapB;

  friend bool operator==(const ComparisonResult &, const ComparisonResult &) = default;
};

/// Clairvoyant (always closed form) against both GLRT detectors at window
/// size n. The GLRT curves follow `source`.
inline ComparisonResult compare_to_clairvoyant(std::size_t n, const ParetoParams &clutter,
                                               const ParetoParams &target,
                                               std::span<const double> pfaGrid, RocSource source,
                                               std::uint64_t trials, std::uint64_t seed,
                                               const EngineOptions &options = {}) {
  const double first = pfaGrid.empty() ? 0.5 : pfaGrid.front();
  ComparisonResult result;
  result.windowSize = n;
  result.clairvoyant =
      roc_curve(DetectorSpec::clairvoyant(first, clutter, n), clutter, target, pfaGrid,
                RocSource::Theory, trials, seed, options);
  result.caseA = roc_curve(DetectorSpec::case_a(first, n, clutter.scale()), clutter, target,
                           pfaGrid, source, trials, seed, options);
  result.caseB = roc_curve(DetectorSpec::case_b(first, n), clutter, target, pfaGrid, source,
                           trials, mix64(seed), options);
  for (std::size_t i = 0; i < pfaGrid.size(); ++i) {
    result.gapA.push_back(result.clairvoyant.points[i].pd - result.caseA.points[i].pd);
    result.gapB.push_back(result.clairvoyant.points[i].pd - result.caseB.points[i].pd);
  }
  return result;
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_MONTECARLO_HPP_
