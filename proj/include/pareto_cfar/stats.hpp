#ifndef PARETO_CFAR_STATS_HPP_
#define PARETO_CFAR_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pareto_cfar/errors.hpp"

namespace pareto_cfar::stats {

/// Two-sided standard normal quantiles.
inline constexpr double kZ99 = 2.5758293035489004;  // Phi^{-1}(0.995)
inline constexpr double kZ95 = 1.959963984540054;   // Phi^{-1}(0.975)

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t hits, std::uint64_t trials,
                                double z = kZ99) {
  if (trials == 0) detail::fail(ErrorKind::Domain, "wilson_interval needs trials >= 1");
  if (hits > trials) detail::fail(ErrorKind::Domain, "wilson_interval needs hits <= trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double low = std::max(0.0, centre - half);
  double high = std::min(1.0, centre + half);
  // Rounding can push an endpoint past p at hits = 0 or hits = trials.
  low = std::min(low, p);
  high = std::max(high, p);
  return {low, high};
}

/// Asymptotic Kolmogorov survival function Q(x) = 2 sum (-1)^{k-1} e^{-2k^2x^2}.
inline double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // series converges slowly; Q is 1 to double precision
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// p-value of a one-sample KS statistic `d` on `n` points, with Stephens'
/// finite-sample correction.
inline double ks_pvalue(double d, double n) {
  const double root = std::sqrt(n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

/// Critical value of the one-sample KS statistic at significance `level`,
/// from the asymptotic law: sqrt(-ln(level/2) / 2) / sqrt(n).
inline double ks_critical_value(double n, double level) {
  return std::sqrt(-0.5 * std::log(level / 2.0) / n);
}

/// Two-sample variant: c(level) * sqrt((n + m) / (n m)).
inline double ks_two_sample_critical_value(double n, double m, double level) {
  return std::sqrt(-0.5 * std::log(level / 2.0)) * std::sqrt((n + m) / (n * m));
}

/// sup |F_n - F| for a sample against a continuous cdf.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf &&cdf) {
  if (samples.empty()) detail::fail(ErrorKind::Domain, "ks_statistic needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, above - f, f - below});
  }
  return d;
}

/// sup |F_n - G_m| between two empirical cdfs; ties handled by advancing
/// both samples past equal values before comparing.
inline double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) detail::fail(ErrorKind::Domain, "two-sample KS needs samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

inline double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    detail::fail(ErrorKind::Domain, "correlation needs two equal-length samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Pooled two-proportion z statistic.
inline double two_proportion_z(std::uint64_t hits1, std::uint64_t n1,
                               std::uint64_t hits2, std::uint64_t n2) {
  const double p1 = static_cast<double>(hits1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(hits2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(hits1 + hits2) / static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se == 0.0) return 0.0;
  return (p1 - p2) / se;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
template <typename F>
double simpson(F &&f, double a, double b, std::size_t panels) {
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  }
  return sum * h / 3.0;
}

}  // namespace pareto_cfar::stats

#endif  // PARETO_CFAR_STATS_HPP_
