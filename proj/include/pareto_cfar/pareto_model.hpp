#ifndef PARETO_CFAR_PARETO_MODEL_HPP_
#define PARETO_CFAR_PARETO_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/random.hpp"

namespace pareto_cfar {

/// Two-parameter Pareto law Pa(shape, scale): support [scale, inf), tail
/// index `shape`. Smaller shape means a heavier tail.
class ParetoParams {
 public:
  ParetoParams(double shape, double scale) : shape_(shape), scale_(scale) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
      detail::fail(ErrorKind::InvalidParameters,
                   "Pareto shape must be positive and finite, got " +
                       std::to_string(shape));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      detail::fail(ErrorKind::InvalidParameters,
                   "Pareto scale must be positive and finite, got " +
                       std::to_string(scale));
    }
  }

  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  friend bool operator==(const ParetoParams &, const ParetoParams &) = default;

 private:
  double shape_;
  double scale_;
};

inline double pareto_cdf(double y, const ParetoParams &p) {
  if (!(y >= p.scale())) return 0.0;
  if (std::isinf(y)) return 1.0;
  // -expm1 keeps precision for y just above the scale.
  return -std::expm1(p.shape() * -std::log(y / p.scale()));
}

inline double pareto_pdf(double y, const ParetoParams &p) {
  if (!(y >= p.scale()) || std::isinf(y)) return 0.0;
  const double a = p.shape();
  return a / p.scale() * std::exp(-(a + 1.0) * std::log(y / p.scale()));
}

/// Inverse cdf evaluated at 1 - u, i.e. scale * u^(-1/shape).
inline double pareto_from_uniform(double u, const ParetoParams &p) {
  if (!(u > 0.0 && u <= 1.0)) {
    detail::fail(ErrorKind::Domain, "uniform draw must lie in (0,1], got " + std::to_string(u));
  }
  return p.scale() * std::pow(u, -1.0 / p.shape());
}

/// Inverse-transform draw. Uniforms come from the open interval (0,1), so the
/// result is finite and never below the scale.
template <typename Rng>
double sample_pareto(const ParetoParams &p, Rng &rng) {
  return pareto_from_uniform(open_uniform(rng), p);
}

/// ln(value / reference) for value >= reference > 0. Falls back to a
/// difference of logs when the ratio leaves the representable range.
inline double log_reduce(double value, double reference) {
  if (!(reference > 0.0)) {
    detail::fail(ErrorKind::Domain, "log_reduce reference must be positive, got " +
                                        std::to_string(reference));
  }
  if (!(value >= reference)) {
    detail::fail(ErrorKind::Domain, "log_reduce needs value >= reference, got " +
                                        std::to_string(value) + " < " +
                                        std::to_string(reference));
  }
  const double ratio = value / reference;
  if (std::isfinite(ratio) && ratio >= 1.0) return std::log(ratio);
  return std::log(value) - std::log(reference);
}

/// Density of G = ln(Y/h) - ln(X_(1)/h) under the null hypothesis, where
/// Y ~ Pa(alpha, h) and X_(1) is the minimum of `n` iid Pa(alpha, h) draws.
/// `rate` is alpha. Two-sided exponential with weight n/(n+1) on g > 0.
inline double g_density(double g, std::size_t n, double rate) {
  if (n < 1) detail::fail(ErrorKind::Domain, "g_density needs n >= 1");
  if (!(rate > 0.0)) detail::fail(ErrorKind::Domain, "g_density needs rate > 0");
  const double nd = static_cast<double>(n);
  const double peak = nd / (nd + 1.0) * rate;
  return g >= 0.0 ? peak * std::exp(-rate * g) : peak * std::exp(nd * rate * g);
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_PARETO_MODEL_HPP_
