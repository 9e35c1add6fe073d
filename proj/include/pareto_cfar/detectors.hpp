#ifndef PARETO_CFAR_DETECTORS_HPP_
#define PARETO_CFAR_DETECTORS_HPP_

// Detection of a Pareto target Pa(rho, h) in Pareto clutter Pa(alpha, h) from
// one cell-under-test (CUT) observation y and n reference-window observations.
//
//   Clairvoyant: alpha and h known. Neyman-Pearson test, y > h pfa^(-1/alpha).
//   CaseA:       h known, alpha unknown. GLRT statistic
//                  u = n ln(y/h) / sum ln(x_i/h)  compared with n(pfa^(-1/n) - 1).
//   CaseB:       alpha and h unknown. GLRT statistic
//                  ln(y/x_(1)) / ((1/n) sum ln(x_i/x_(1)))  (0 when y <= x_(1))
//                compared with n(((n+1)/n pfa)^(1/(1-n)) - 1).
//
// The CaseA and CaseB thresholds depend on neither clutter parameter, which is
// what makes both GLRT detectors CFAR.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/pareto_model.hpp"

namespace pareto_cfar {

/// Statistic value for "infinitely strong evidence" (zero denominator with a
/// positive numerator). Greater than every finite threshold.
inline constexpr double kInfiniteStatistic = std::numeric_limits<double>::infinity();

enum class DetectorKind { Clairvoyant, CaseA, CaseB };

inline std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Clairvoyant: return "clairvoyant";
    case DetectorKind::CaseA: return "case-a";
    case DetectorKind::CaseB: return "case-b";
  }
  return "unknown";
}

inline DetectorKind parse_detector_kind(std::string_view text) {
  if (text == "clairvoyant") return DetectorKind::Clairvoyant;
  if (text == "case-a") return DetectorKind::CaseA;
  if (text == "case-b") return DetectorKind::CaseB;
  detail::fail(ErrorKind::InvalidParameters,
               "unknown detector kind '" + std::string(text) +
                   "' (expected clairvoyant, case-a or case-b)");
}

struct DetectionInput {
  double cut = 0.0;
  std::vector<double> window;
  std::optional<double> knownScale;
};

struct Decision {
  bool targetPresent = false;
  double statistic = 0.0;
  double threshold = 0.0;

  static Decision compare(double statistic, double threshold) {
    return {statistic > threshold, statistic, threshold};
  }

  friend bool operator==(const Decision &, const Decision &) = default;
};

struct MleResult {
  double alphaHat = 0.0;
  double rhoHat = 0.0;
  std::optional<double> hHat;
  bool boundary = false;
};

namespace detail {

inline void check_pfa_open(double pfa, const char *what) {
  if (!(pfa > 0.0 && pfa < 1.0)) {
    fail(ErrorKind::InvalidPfa,
         std::string(what) + " needs pfa in (0,1), got " + std::to_string(pfa));
  }
}

inline void check_shapes(double alpha, double rho) {
  if (!(alpha > 0.0) || !(rho > 0.0)) {
    fail(ErrorKind::InvalidParameters, "shape parameters must be positive");
  }
  if (rho > alpha) {
    fail(ErrorKind::InvalidParameters,
         "target shape rho=" + std::to_string(rho) +
             " exceeds clutter shape alpha=" + std::to_string(alpha));
  }
}

inline double case_b_pfa_limit(std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd / (nd + 1.0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Clairvoyant detector

/// gamma_th = h pfa^(-1/alpha); Pr(Y > gamma_th) = pfa under Pa(alpha, h).
inline double clairvoyant_threshold(double pfa, const ParetoParams &clutter) {
  if (!(pfa > 0.0 && pfa <= 1.0)) {
    detail::fail(ErrorKind::InvalidPfa,
                 "clairvoyant threshold needs pfa in (0,1], got " + std::to_string(pfa));
  }
  return clutter.scale() * std::pow(pfa, -1.0 / clutter.shape());
}

/// pd = pfa^(rho/alpha).
inline double clairvoyant_pd(double pfa, double alpha, double rho) {
  if (!(pfa > 0.0 && pfa <= 1.0)) {
    detail::fail(ErrorKind::InvalidPfa,
                 "clairvoyant pd needs pfa in (0,1], got " + std::to_string(pfa));
  }
  detail::check_shapes(alpha, rho);
  return std::pow(pfa, rho / alpha);
}

// ---------------------------------------------------------------------------
// Case (a): known scale

/// u = n Lambda(y) / Lambda(x) with Lambda(y) = ln(y/h), Lambda(x) = sum ln(x_i/h).
inline double case_a_statistic(double cut, std::span<const double> window, double scale) {
  if (window.empty()) detail::fail(ErrorKind::SpecMismatch, "case-a needs a nonempty window");
  const double lambdaY = log_reduce(cut, scale);
  double lambdaX = 0.0;
  for (const double x : window) lambdaX += log_reduce(x, scale);
  if (lambdaY == 0.0) return 0.0;
  if (lambdaX == 0.0) return kInfiniteStatistic;
  return static_cast<double>(window.size()) * lambdaY / lambdaX;
}

inline double case_a_statistic(const DetectionInput &input) {
  if (!input.knownScale) {
    detail::fail(ErrorKind::SpecMismatch, "case-a statistic needs the known clutter scale");
  }
  return case_a_statistic(input.cut, input.window, *input.knownScale);
}

/// gamma_1 = n (pfa^(-1/n) - 1), the inverse of pfa = (1 + gamma_1/n)^(-n).
inline double case_a_threshold(double pfa, std::size_t n) {
  detail::check_pfa_open(pfa, "case-a threshold");
  if (n < 1) detail::fail(ErrorKind::InvalidParameters, "case-a needs n >= 1");
  const double nd = static_cast<double>(n);
  // expm1 keeps full relative precision as pfa -> 1.
  return nd * std::expm1(-std::log(pfa) / nd);
}

/// Size of the case-a test for threshold gamma_1: (1 + gamma_1/n)^(-n).
inline double case_a_pfa(double threshold, std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::exp(-nd * std::log1p(threshold / nd));
}

/// The monotone-LR argument behind the case-a threshold assumes u > 1, which
/// holds when gamma_1 > 1, i.e. pfa < (1 + 1/n)^(-n).
inline bool case_a_exact_regime(double pfa, std::size_t n) {
  return pfa < case_a_pfa(1.0, n);
}

/// pd = (1 + rho gamma_1 / (alpha n))^(-n).
inline double case_a_pd(double pfa, std::size_t n, double alpha, double rho) {
  detail::check_shapes(alpha, rho);
  const double threshold = case_a_threshold(pfa, n);
  const double nd = static_cast<double>(n);
  return std::exp(-nd * std::log1p(rho * threshold / (alpha * nd)));
}

// ---------------------------------------------------------------------------
// Case (b): unknown shape and scale

/// ln(y/x_(1)) / ((1/n) sum ln(x_i/x_(1))). Returns 0 when y <= x_(1): the
/// LR is zero there and H0 is accepted.
inline double case_b_statistic(double cut, std::span<const double> window) {
  if (window.size() < 2) detail::fail(ErrorKind::SpecMismatch, "case-b needs n >= 2");
  if (!(cut > 0.0)) detail::fail(ErrorKind::Domain, "observations must be positive");
  double minimum = window.front();
  for (const double x : window) {
    if (!(x > 0.0)) detail::fail(ErrorKind::Domain, "observations must be positive");
    minimum = std::min(minimum, x);
  }
  if (cut <= minimum) return 0.0;
  double spread = 0.0;
  for (const double x : window) spread += log_reduce(x, minimum);
  if (spread == 0.0) return kInfiniteStatistic;
  return log_reduce(cut, minimum) * static_cast<double>(window.size()) / spread;
}

inline double case_b_statistic(const DetectionInput &input) {
  return case_b_statistic(input.cut, input.window);
}

/// Size of the case-b test for threshold gamma: (n/(n+1)) (1 + gamma/n)^(-(n-1)).
inline double case_b_pfa(double threshold, std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd / (nd + 1.0) * std::exp(-(nd - 1.0) * std::log1p(threshold / nd));
}

/// gamma = n ([(n+1)/n pfa]^(1/(1-n)) - 1). Only pfa < n/(n+1) gives gamma > 0.
inline double case_b_threshold(double pfa, std::size_t n) {
  if (n < 2) detail::fail(ErrorKind::InvalidParameters, "case-b needs n >= 2");
  const double limit = detail::case_b_pfa_limit(n);
  if (!(pfa > 0.0 && pfa < limit)) {
    detail::fail(ErrorKind::InvalidPfa,
                 "case-b threshold needs 0 < pfa < n/(n+1) = " + std::to_string(limit) +
                     ", got " + std::to_string(pfa));
  }
  const double nd = static_cast<double>(n);
  return nd * std::expm1(std::log(pfa / limit) / (1.0 - nd));
}

/// Thresholds above 1 are the regime the GLRT derivation describes; the
/// size formula itself holds for every gamma > 0.
inline bool case_b_practical_regime(double pfa, std::size_t n) {
  return pfa < case_b_pfa(1.0, n);
}

/// pd = (n alpha / (rho + n alpha)) (1 + rho gamma / (n alpha))^(-(n-1)).
inline double case_b_pd(double pfa, std::size_t n, double alpha, double rho) {
  detail::check_shapes(alpha, rho);
  const double threshold = case_b_threshold(pfa, n);
  const double nd = static_cast<double>(n);
  const double na = nd * alpha;
  return na / (rho + na) * std::exp(-(nd - 1.0) * std::log1p(rho * threshold / na));
}

// ---------------------------------------------------------------------------
// Maximum likelihood estimates

namespace detail {

// Shared closed form for both cases once Lambda(y), Lambda(x) are known.
inline MleResult mle_from_lambdas(double lambdaY, double lambdaX, std::size_t n) {
  const double nd = static_cast<double>(n);
  if (lambdaY + lambdaX == 0.0) {
    fail(ErrorKind::DegenerateSample, "all observations sit at the scale; MLE does not exist");
  }
  // 1/Lambda(y) < n/Lambda(x), written without divisions.
  if (lambdaX < nd * lambdaY) {
    if (lambdaX == 0.0) {
      fail(ErrorKind::DegenerateSample,
           "window observations all equal the scale; likelihood unbounded in alpha");
    }
    return {nd / lambdaX, 1.0 / lambdaY, std::nullopt, false};
  }
  const double pooled = (nd + 1.0) / (lambdaY + lambdaX);
  return {pooled, pooled, std::nullopt, true};
}

}  // namespace detail

inline MleResult mle_case_a(const DetectionInput &input) {
  if (!input.knownScale) {
    detail::fail(ErrorKind::SpecMismatch, "case-a MLE needs the known clutter scale");
  }
  if (input.window.empty()) detail::fail(ErrorKind::SpecMismatch, "case-a needs n >= 1");
  const double h = *input.knownScale;
  double lambdaX = 0.0;
  for (const double x : input.window) lambdaX += log_reduce(x, h);
  return detail::mle_from_lambdas(log_reduce(input.cut, h), lambdaX, input.window.size());
}

/// Scale estimate min(y, x_(1)); shape estimates follow the case-a formulas
/// with Lambda measured from that estimate.
inline MleResult mle_case_b(const DetectionInput &input) {
  if (input.window.size() < 2) detail::fail(ErrorKind::SpecMismatch, "case-b needs n >= 2");
  if (!(input.cut > 0.0)) detail::fail(ErrorKind::Domain, "observations must be positive");
  double hHat = input.cut;
  for (const double x : input.window) {
    if (!(x > 0.0)) detail::fail(ErrorKind::Domain, "observations must be positive");
    hHat = std::min(hHat, x);
  }
  double lambdaX = 0.0;
  for (const double x : input.window) lambdaX += log_reduce(x, hHat);
  MleResult result =
      detail::mle_from_lambdas(log_reduce(input.cut, hHat), lambdaX, input.window.size());
  result.hHat = hHat;
  return result;
}

// ---------------------------------------------------------------------------
// Likelihood ratio (case a)

/// Simplified GLRT ratio (n+1)^(n+1) u / (u + n)^(n+1); decreasing in u for u > 1.
inline double simplified_likelihood_ratio(double u, std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::exp((nd + 1.0) * std::log(nd + 1.0) + std::log(u) -
                  (nd + 1.0) * std::log(u + nd));
}

/// Log-likelihood of the case-a model at (alpha, rho) for known scale h.
inline double case_a_log_likelihood(double alpha, double rho, double h, double cut,
                                    std::span<const double> window) {
  const double nd = static_cast<double>(window.size());
  double sumLogX = 0.0;
  for (const double x : window) sumLogX += std::log(x);
  return nd * std::log(alpha) + std::log(rho) + (nd * alpha + rho) * std::log(h) -
         (rho + 1.0) * std::log(cut) - (alpha + 1.0) * sumLogX;
}

/// GLRT ratio evaluated by plugging the restricted and unrestricted MLEs into
/// the raw likelihoods (in log space). Returns 1 when the unrestricted
/// optimum sits on the rho = alpha boundary.
inline double raw_likelihood_ratio_case_a(const DetectionInput &input) {
  const MleResult mle = mle_case_a(input);
  if (mle.boundary) return 1.0;
  const double h = *input.knownScale;
  double lambdaX = 0.0;
  for (const double x : input.window) lambdaX += log_reduce(x, h);
  const double lambdaY = log_reduce(input.cut, h);
  const double nd = static_cast<double>(input.window.size());
  const double restricted = (nd + 1.0) / (lambdaY + lambdaX);
  const double logNull =
      case_a_log_likelihood(restricted, restricted, h, input.cut, input.window);
  const double logFull =
      case_a_log_likelihood(mle.alphaHat, mle.rhoHat, h, input.cut, input.window);
  return std::exp(logNull - logFull);
}

// ---------------------------------------------------------------------------
// Detector specification and dispatch

class DetectorSpec {
 public:
  static DetectorSpec clairvoyant(double pfa, const ParetoParams &clutter,
                                  std::size_t windowSize = 0) {
    DetectorSpec spec(DetectorKind::Clairvoyant, pfa, windowSize);
    spec.knownShape_ = clutter.shape();
    spec.knownScale_ = clutter.scale();
    spec.validate();
    return spec;
  }

  static DetectorSpec case_a(double pfa, std::size_t windowSize, double knownScale) {
    DetectorSpec spec(DetectorKind::CaseA, pfa, windowSize);
    spec.knownScale_ = knownScale;
    spec.validate();
    return spec;
  }

  static DetectorSpec case_b(double pfa, std::size_t windowSize) {
    DetectorSpec spec(DetectorKind::CaseB, pfa, windowSize);
    spec.validate();
    return spec;
  }

  DetectorKind kind() const noexcept { return kind_; }
  double design_pfa() const noexcept { return designPfa_; }
  std::size_t window_size() const noexcept { return windowSize_; }
  std::optional<double> known_scale() const noexcept { return knownScale_; }
  std::optional<double> known_shape() const noexcept { return knownShape_; }

  std::optional<ParetoParams> known_clutter() const {
    if (knownShape_ && knownScale_) return ParetoParams(*knownShape_, *knownScale_);
    return std::nullopt;
  }

  /// Same detector at a different design false-alarm probability.
  DetectorSpec with_pfa(double pfa) const {
    DetectorSpec copy = *this;
    copy.designPfa_ = pfa;
    copy.validate();
    return copy;
  }

  friend bool operator==(const DetectorSpec &, const DetectorSpec &) = default;

 private:
  DetectorSpec(DetectorKind kind, double pfa, std::size_t windowSize)
      : kind_(kind), designPfa_(pfa), windowSize_(windowSize) {}

  void validate() const {
    switch (kind_) {
      case DetectorKind::Clairvoyant:
        static_cast<void>(ParetoParams(knownShape_.value_or(0.0), knownScale_.value_or(0.0)));
        static_cast<void>(clairvoyant_threshold(designPfa_, *known_clutter()));
        break;
      case DetectorKind::CaseA:
        if (!knownScale_ || !(*knownScale_ > 0.0)) {
          detail::fail(ErrorKind::InvalidParameters, "case-a needs a positive known scale");
        }
        static_cast<void>(case_a_threshold(designPfa_, windowSize_));
        break;
      case DetectorKind::CaseB:
        static_cast<void>(case_b_threshold(designPfa_, windowSize_));
        break;
    }
  }

  DetectorKind kind_;
  double designPfa_;
  std::size_t windowSize_;
  std::optional<double> knownShape_;
  std::optional<double> knownScale_;
};

inline double detector_threshold(const DetectorSpec &spec) {
  switch (spec.kind()) {
    case DetectorKind::Clairvoyant:
      return clairvoyant_threshold(spec.design_pfa(), *spec.known_clutter());
    case DetectorKind::CaseA:
      return case_a_threshold(spec.design_pfa(), spec.window_size());
    case DetectorKind::CaseB:
      return case_b_threshold(spec.design_pfa(), spec.window_size());
  }
  return 0.0;
}

/// Threshold plus the regime flag reported alongside it. For the clairvoyant
/// detector the regime is always exact.
struct ThresholdInfo {
  double value;
  bool exactRegime;
};

inline ThresholdInfo describe_threshold(const DetectorSpec &spec) {
  const double value = detector_threshold(spec);
  switch (spec.kind()) {
    case DetectorKind::CaseA:
      return {value, case_a_exact_regime(spec.design_pfa(), spec.window_size())};
    case DetectorKind::CaseB:
      return {value, case_b_practical_regime(spec.design_pfa(), spec.window_size())};
    default:
      return {value, true};
  }
}

/// Closed-form detection probability at the spec's design pfa.
inline double theoretical_pd(const DetectorSpec &spec, double alpha, double rho) {
  switch (spec.kind()) {
    case DetectorKind::Clairvoyant:
      return clairvoyant_pd(spec.design_pfa(), alpha, rho);
    case DetectorKind::CaseA:
      return case_a_pd(spec.design_pfa(), spec.window_size(), alpha, rho);
    case DetectorKind::CaseB:
      return case_b_pd(spec.design_pfa(), spec.window_size(), alpha, rho);
  }
  return 0.0;
}

/// A spec with its threshold precomputed, for repeated decisions.
class Detector {
 public:
  explicit Detector(DetectorSpec spec) : spec_(spec), threshold_(detector_threshold(spec_)) {}

  const DetectorSpec &spec() const noexcept { return spec_; }
  double threshold() const noexcept { return threshold_; }

  double statistic(double cut, std::span<const double> window,
                   std::optional<double> inputScale = std::nullopt) const {
    switch (spec_.kind()) {
      case DetectorKind::Clairvoyant:
        if (!(cut > 0.0)) detail::fail(ErrorKind::Domain, "observations must be positive");
        check_scale(inputScale);
        return cut;
      case DetectorKind::CaseA: {
        check_window(window);
        check_scale(inputScale);
        return case_a_statistic(cut, window, *spec_.known_scale());
      }
      case DetectorKind::CaseB:
        check_window(window);
        return case_b_statistic(cut, window);
    }
    return 0.0;
  }

  Decision decide(double cut, std::span<const double> window,
                  std::optional<double> inputScale = std::nullopt) const {
    return Decision::compare(statistic(cut, window, inputScale), threshold_);
  }

  Decision decide(const DetectionInput &input) const {
    return decide(input.cut, input.window, input.knownScale);
  }

 private:
  void check_window(std::span<const double> window) const {
    if (window.size() != spec_.window_size()) {
      detail::fail(ErrorKind::SpecMismatch,
                   "window has " + std::to_string(window.size()) + " cells, detector expects " +
                       std::to_string(spec_.window_size()));
    }
  }

  void check_scale(std::optional<double> inputScale) const {
    if (inputScale && *inputScale != *spec_.known_scale()) {
      detail::fail(ErrorKind::SpecMismatch, "input scale " + std::to_string(*inputScale) +
                                                " differs from detector scale " +
                                                std::to_string(*spec_.known_scale()));
    }
  }

  DetectorSpec spec_;
  double threshold_;
};

inline Decision detect(const DetectorSpec &spec, const DetectionInput &input) {
  return Detector(spec).decide(input);
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_DETECTORS_HPP_
