#ifndef PARETO_CFAR_DERIVED_LAW_HPP_
#define PARETO_CFAR_DERIVED_LAW_HPP_

// Reference distributions of the log-transformed Pareto observations. These
// are oracles for the identity suite and the tests; the detectors never use
// them.

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>

#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/pareto_model.hpp"

namespace pareto_cfar {

struct ExpRate {
  double rate;
};

/// Gamma law with integer shape, parameterized by scale.
struct GammaLaw {
  std::size_t shapeCount;
  double scaleFactor;
};

/// Law of the minimum of `count` iid Pa(shape, scale) draws.
struct ParetoMin {
  double shape;
  double scale;
  std::size_t count = 1;
};

/// G = B - A with B ~ Exp(rate), A ~ Exp(n * rate).
struct DiffExp {
  std::size_t n;
  double rate;
};

class DerivedLaw {
 public:
  using Kind = std::variant<ExpRate, GammaLaw, ParetoMin, DiffExp>;

  DerivedLaw(Kind kind) : kind_(kind) { validate(); }  // NOLINT: implicit

  const Kind &kind() const noexcept { return kind_; }

  double cdf(double x) const {
    return std::visit([x](const auto &law) { return cdf_of(law, x); }, kind_);
  }

  std::string name() const {
    return std::visit([](const auto &law) { return name_of(law); }, kind_);
  }

 private:
  void validate() const {
    std::visit(
        [](const auto &law) {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, ExpRate>) {
            if (!(law.rate > 0.0)) detail::fail(ErrorKind::InvalidParameters, "ExpRate.rate must be > 0");
          } else if constexpr (std::is_same_v<T, GammaLaw>) {
            if (law.shapeCount < 1) detail::fail(ErrorKind::InvalidParameters, "Gamma.shapeCount must be >= 1");
            if (!(law.scaleFactor > 0.0)) detail::fail(ErrorKind::InvalidParameters, "Gamma.scaleFactor must be > 0");
          } else if constexpr (std::is_same_v<T, ParetoMin>) {
            static_cast<void>(ParetoParams(law.shape, law.scale));
            if (law.count < 1) detail::fail(ErrorKind::InvalidParameters, "ParetoMin.count must be >= 1");
          } else {
            if (law.n < 1) detail::fail(ErrorKind::InvalidParameters, "DiffExp.n must be >= 1");
            if (!(law.rate > 0.0)) detail::fail(ErrorKind::InvalidParameters, "DiffExp.rate must be > 0");
          }
        },
        kind_);
  }

  static double cdf_of(const ExpRate &law, double x) {
    return x <= 0.0 ? 0.0 : -std::expm1(-law.rate * x);
  }

  // Erlang cdf: 1 - e^{-z} sum_{j<k} z^j / j!
  static double cdf_of(const GammaLaw &law, double x) {
    if (x <= 0.0) return 0.0;
    const double z = x / law.scaleFactor;
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t j = 1; j < law.shapeCount; ++j) {
      term *= z / static_cast<double>(j);
      sum += term;
    }
    return 1.0 - std::exp(-z) * sum;
  }

  static double cdf_of(const ParetoMin &law, double x) {
    return pareto_cdf(x, ParetoParams(law.shape * static_cast<double>(law.count), law.scale));
  }

  static double cdf_of(const DiffExp &law, double g) {
    const double n = static_cast<double>(law.n);
    if (g < 0.0) return std::exp(n * law.rate * g) / (n + 1.0);
    return 1.0 - n / (n + 1.0) * std::exp(-law.rate * g);
  }

  static std::string name_of(const ExpRate &law) {
    return "Exp(rate=" + std::to_string(law.rate) + ")";
  }
  static std::string name_of(const GammaLaw &law) {
    return "Gamma(shape=" + std::to_string(law.shapeCount) +
           ", scale=" + std::to_string(law.scaleFactor) + ")";
  }
  static std::string name_of(const ParetoMin &law) {
    return "Pa(" + std::to_string(law.shape * static_cast<double>(law.count)) +
           ", " + std::to_string(law.scale) + ")";
  }
  static std::string name_of(const DiffExp &law) {
    return "DiffExp(n=" + std::to_string(law.n) + ", rate=" + std::to_string(law.rate) + ")";
  }

  Kind kind_;
};

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_DERIVED_LAW_HPP_
