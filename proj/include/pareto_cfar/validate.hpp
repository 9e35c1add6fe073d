#ifndef PARETO_CFAR_VALIDATE_HPP_
#define PARETO_CFAR_VALIDATE_HPP_

// Distributional identity suite. For Y, X_i ~ Pa(alpha, h) iid:
//   ln(Y/h)                         ~ Exp(alpha)
//   X_(1) = min X_i                 ~ Pa(n alpha, h)
//   D = (1/n) sum ln(X_i / X_(1))   ~ Gamma(n - 1, scale 1/(alpha n)), independent of X_(1)
//   G = ln(Y/h) - ln(X_(1)/h)       has density g_density(., n, alpha)
// Each identity is checked on fresh samples at a fixed significance level.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "pareto_cfar/derived_law.hpp"
#include "pareto_cfar/pareto_model.hpp"
#include "pareto_cfar/random.hpp"
#include "pareto_cfar/stats.hpp"

namespace pareto_cfar {

struct ValidationConfig {
  std::size_t samples = 100'000;
  std::uint64_t seed = 1;
  double alpha = 5.0;
  double h = 0.7;
  std::vector<std::size_t> windowSizes{4, 8};
  double level = 0.01;
  std::size_t histogramBins = 50;
  double histogramSigmas = 3.0;
  double correlationBound = 0.01;
  double integralTolerance = 1e-6;
  /// Adds a negative control (Exp samples tested against a Gamma(2) law)
  /// that must be reported as failing.
  bool forceMismatch = false;
};

struct ValidationCheck {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct ValidationReport {
  ValidationConfig config;
  std::vector<ValidationCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.passed; });
  }

  const ValidationCheck *find(const std::string &name) const {
    for (const auto &c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

inline ValidationCheck ks_check(std::string name, const std::vector<double> &samples,
                                const DerivedLaw &law, double level) {
  const double d = stats::ks_statistic(samples, [&](double x) { return law.cdf(x); });
  const double critical = stats::ks_critical_value(static_cast<double>(samples.size()), level);
  return {std::move(name), d, critical, d <= critical};
}

// Window of n draws: returns (X_(1), D) and optionally a CUT draw.
struct WindowSummary {
  double minimum;
  double spread;  // D
};

template <typename Rng>
WindowSummary summarize_window(const ParetoParams &p, std::size_t n, Rng &rng,
                               std::vector<double> &scratch) {
  scratch.resize(n);
  double minimum = std::numeric_limits<double>::infinity();
  for (double &x : scratch) {
    x = sample_pareto(p, rng);
    minimum = std::min(minimum, x);
  }
  double sum = 0.0;
  for (const double x : scratch) sum += log_reduce(x, minimum);
  return {minimum, sum / static_cast<double>(n)};
}

}  // namespace detail

/// Largest |count - N p| / sqrt(N p (1 - p)) over histogram bins of G, with
/// bin probabilities integrated from g_density.
inline double g_histogram_max_sigma(const std::vector<double> &g, std::size_t n, double rate,
                                    std::size_t bins) {
  // Bin range: roughly the 0.1% and 99.9% quantiles of G.
  const double nd = static_cast<double>(n);
  const double lo = std::log(0.001 * (nd + 1.0)) / (nd * rate);
  const double hi = -std::log(0.001 * (nd + 1.0) / nd) / rate;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::uint64_t> counts(bins, 0);
  for (const double v : g) {
    if (v < lo || v >= hi) continue;
    const auto b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
    ++counts[b];
  }
  const double total = static_cast<double>(g.size());
  double worst = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    const double a = lo + width * static_cast<double>(b);
    const double c = a + width;
    const auto density = [&](double x) { return g_density(x, n, rate); };
    double p = 0.0;
    if (a < 0.0 && c > 0.0) {
      p = stats::simpson(density, a, 0.0, 200) + stats::simpson(density, 0.0, c, 200);
    } else {
      p = stats::simpson(density, a, c, 200);
    }
    const double expected = total * p;
    const double sigma = std::sqrt(total * p * (1.0 - p));
    worst = std::max(worst, std::abs(static_cast<double>(counts[b]) - expected) / sigma);
  }
  return worst;
}

inline ValidationReport run_identity_suite(const ValidationConfig &config) {
  ValidationReport report{config, {}};
  const ParetoParams clutter(config.alpha, config.h);
  const std::size_t N = config.samples;
  std::uint64_t stream = 0;
  auto next_rng = [&] { return SplitMix64(mix64(config.seed + stream++)); };

  {
    auto rng = next_rng();
    std::vector<double> y(N);
    for (double &v : y) v = sample_pareto(clutter, rng);
    const double d = stats::ks_statistic(y, [&](double x) { return pareto_cdf(x, clutter); });
    const double critical = stats::ks_critical_value(static_cast<double>(N), config.level);
    report.checks.push_back({"pareto_sampler_ks", d, critical, d <= critical});
    for (double &v : y) v = log_reduce(v, config.h);
    report.checks.push_back(
        detail::ks_check("log_pareto_exp_ks", y, DerivedLaw(ExpRate{config.alpha}), config.level));
  }

  for (const std::size_t n : config.windowSizes) {
    const std::string suffix = "_n" + std::to_string(n);
    auto rng = next_rng();
    std::vector<double> scratch;
    std::vector<double> minima(N);
    std::vector<double> spreads(N);
    std::vector<double> g(N);
    for (std::size_t i = 0; i < N; ++i) {
      const auto summary = detail::summarize_window(clutter, n, rng, scratch);
      minima[i] = summary.minimum;
      spreads[i] = summary.spread;
      const double y = sample_pareto(clutter, rng);
      g[i] = log_reduce(y, config.h) - log_reduce(summary.minimum, config.h);
    }
    report.checks.push_back(detail::ks_check("minimum_pareto_ks" + suffix, minima,
                                             DerivedLaw(ParetoMin{config.alpha, config.h, n}),
                                             config.level));
    if (n >= 2) {
      const double scale = 1.0 / (config.alpha * static_cast<double>(n));
      report.checks.push_back(detail::ks_check("spread_gamma_ks" + suffix, spreads,
                                               DerivedLaw(GammaLaw{n - 1, scale}), config.level));
      const double r = stats::correlation(spreads, minima);
      report.checks.push_back({"spread_minimum_independence" + suffix, std::abs(r),
                               config.correlationBound, std::abs(r) < config.correlationBound});
    }
    const double sigma = g_histogram_max_sigma(g, n, config.alpha, config.histogramBins);
    report.checks.push_back(
        {"g_histogram" + suffix, sigma, config.histogramSigmas, sigma <= config.histogramSigmas});

    const auto density = [&](double x) { return g_density(x, n, config.alpha); };
    const double reach = 50.0 / config.alpha;
    const double integral =
        stats::simpson(density, -reach, 0.0, 200'000) + stats::simpson(density, 0.0, reach, 200'000);
    const double error = std::abs(integral - 1.0);
    report.checks.push_back(
        {"g_density_integral" + suffix, error, config.integralTolerance, error <= config.integralTolerance});
  }

  if (config.forceMismatch) {
    auto rng = next_rng();
    std::vector<double> e(N);
    for (double &v : e) v = log_reduce(sample_pareto(clutter, rng), config.h);
    report.checks.push_back(detail::ks_check("negative_control_exp_vs_gamma2", e,
                                             DerivedLaw(GammaLaw{2, 1.0 / config.alpha}),
                                             config.level));
  }
  return report;
}

inline nlohmann::json to_json_report(const ValidationReport &report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto &c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"statistic", c.statistic},
                      {"threshold", c.threshold},
                      {"passed", c.passed}});
  }
  return {{"seed", report.config.seed},     {"samples", report.config.samples},
          {"alpha", report.config.alpha},   {"h", report.config.h},
          {"level", report.config.level},   {"checks", checks},
          {"passed", report.passed()}};
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_VALIDATE_HPP_
