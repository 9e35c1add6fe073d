#ifndef PARETO_CFAR_RANGEPROFILE_HPP_
#define PARETO_CFAR_RANGEPROFILE_HPP_

// Synthetic range profiles and sliding-window CFAR scans. Geometry around a
// cell under test i, with G guard cells and W reference cells per side:
//
//   [ i-G-W .. i-G-1 ] [ guard ] [ i ] [ guard ] [ i+G+1 .. i+G+W ]
//      leading window                                lagging window
//
// Cells without a full window on both sides get no decision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pareto_cfar/detectors.hpp"
#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/montecarlo.hpp"
#include "pareto_cfar/pareto_model.hpp"
#include "pareto_cfar/random.hpp"

namespace pareto_cfar {

inline constexpr std::size_t kDefaultGuardCells = 2;

struct PlantedTarget {
  std::size_t cellIndex = 0;
  double shape = 0.0;  // rho of the target return, Pa(rho, h)

  friend bool operator==(const PlantedTarget &, const PlantedTarget &) = default;
};

struct ProfileConfig {
  std::size_t cellCount = 0;
  ParetoParams clutter{1.0, 1.0};
  std::vector<PlantedTarget> targets;
  std::size_t halfWindow = 4;
  std::size_t guard = kDefaultGuardCells;
  std::uint64_t seed = 0;

  std::size_t window_size() const noexcept { return 2 * halfWindow; }

  void validate() const {
    if (cellCount < 1) detail::fail(ErrorKind::InvalidParameters, "cellCount must be >= 1");
    if (halfWindow < 1) detail::fail(ErrorKind::InvalidParameters, "halfWindow must be >= 1");
    std::vector<std::size_t> seen;
    for (const PlantedTarget &t : targets) {
      if (t.cellIndex >= cellCount) {
        detail::fail(ErrorKind::InvalidParameters,
                     "target index " + std::to_string(t.cellIndex) + " outside the profile");
      }
      if (!(t.shape > 0.0) || t.shape > clutter.shape()) {
        detail::fail(ErrorKind::InvalidParameters,
                     "target shape must lie in (0, clutter shape]");
      }
      seen.push_back(t.cellIndex);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      detail::fail(ErrorKind::InvalidParameters, "target indices must be distinct");
    }
  }
};

struct RangeProfile {
  std::vector<double> intensities;
  std::vector<bool> isTarget;
  /// Some target sits inside another target's reference window, so that
  /// window is contaminated (interfering-target scenario).
  bool interferingTargets = false;
};

/// Cell i ~ Pa(rho_i, h) for target cells, Pa(alpha, h) otherwise; one
/// sequential stream seeded by config.seed. Targets replace the clutter.
inline RangeProfile generate_profile(const ProfileConfig &config) {
  config.validate();
  RangeProfile profile;
  profile.intensities.resize(config.cellCount);
  profile.isTarget.assign(config.cellCount, false);
  std::vector<double> shapes(config.cellCount, config.clutter.shape());
  for (const PlantedTarget &t : config.targets) {
    shapes[t.cellIndex] = t.shape;
    profile.isTarget[t.cellIndex] = true;
  }
  SplitMix64 rng(config.seed);
  for (std::size_t i = 0; i < config.cellCount; ++i) {
    profile.intensities[i] = sample_pareto(ParetoParams(shapes[i], config.clutter.scale()), rng);
  }
  const std::size_t reach = config.guard + config.halfWindow;
  for (const PlantedTarget &a : config.targets) {
    for (const PlantedTarget &b : config.targets) {
      if (a.cellIndex == b.cellIndex) continue;
      const std::size_t gap =
          a.cellIndex > b.cellIndex ? a.cellIndex - b.cellIndex : b.cellIndex - a.cellIndex;
      if (gap > config.guard && gap <= reach) profile.interferingTargets = true;
    }
  }
  return profile;
}

struct ProfileScan {
  std::size_t halfWindow = 0;
  std::size_t guard = 0;
  std::vector<std::optional<Decision>> decisions;  // empty for edge cells
  std::vector<double> statistics;                  // NaN for edge cells

  std::size_t decision_count() const {
    return static_cast<std::size_t>(
        std::count_if(decisions.begin(), decisions.end(), [](const auto &d) { return d.has_value(); }));
  }

  std::size_t detection_count() const {
    return static_cast<std::size_t>(std::count_if(
        decisions.begin(), decisions.end(), [](const auto &d) { return d && d->targetPresent; }));
  }
};

/// Reference cells for CUT `index`: leading cells, then lagging cells.
inline DetectionInput assemble_window(std::span<const double> profile, std::size_t index,
                                      std::size_t halfWindow, std::size_t guard) {
  const std::size_t reach = halfWindow + guard;
  if (index < reach || index + reach >= profile.size()) {
    detail::fail(ErrorKind::WindowTooLarge,
                 "cell " + std::to_string(index) + " lacks a full reference window");
  }
  DetectionInput input;
  input.cut = profile[index];
  input.window.reserve(2 * halfWindow);
  for (std::size_t k = index - reach; k < index - guard; ++k) input.window.push_back(profile[k]);
  for (std::size_t k = index + guard + 1; k <= index + reach; ++k) input.window.push_back(profile[k]);
  return input;
}

/// Runs the detector at every cell that has a full symmetric window. The
/// half window is spec.window_size() / 2.
inline ProfileScan scan_profile(std::span<const double> profile, const DetectorSpec &spec,
                                std::size_t guard, const EngineOptions &options = {}) {
  const std::size_t n = spec.window_size();
  if (n == 0 || n % 2 != 0) {
    detail::fail(ErrorKind::SpecMismatch, "scan needs an even, nonzero window size");
  }
  const std::size_t halfWindow = n / 2;
  const std::size_t reach = halfWindow + guard;
  if (profile.size() < 2 * reach + 1) {
    detail::fail(ErrorKind::WindowTooLarge,
                 "profile of " + std::to_string(profile.size()) + " cells is shorter than " +
                     std::to_string(2 * reach + 1));
  }
  ProfileScan scan{halfWindow, guard, std::vector<std::optional<Decision>>(profile.size()),
                   std::vector<double>(profile.size(), std::numeric_limits<double>::quiet_NaN())};
  const Detector detector(spec);
  const std::uint64_t eligible = profile.size() - 2 * reach;
  // Each worker writes only its own cells, so output order is fixed.
  detail::parallel_count(eligible, options.threads, [&] {
    return [&](std::uint64_t k) {
      const std::size_t index = reach + static_cast<std::size_t>(k);
      const Decision decision = detector.decide(assemble_window(profile, index, halfWindow, guard));
      scan.decisions[index] = decision;
      scan.statistics[index] = decision.statistic;
      return decision.targetPresent;
    };
  });
  return scan;
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_RANGEPROFILE_HPP_
