#ifndef PARETO_CFAR_ERRORS_HPP_
#define PARETO_CFAR_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pareto_cfar {

enum class ErrorKind {
  Domain,            // argument outside a function's mathematical domain
  InvalidPfa,        // false-alarm probability outside the detector's valid range
  InvalidParameters, // inconsistent distribution or detector parameters
  DegenerateSample,  // MLE does not exist for the given observations
  SpecMismatch,      // detection input does not fit the detector spec
  WindowTooLarge,    // range profile too short for the scan geometry
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain-error";
    case ErrorKind::InvalidPfa: return "invalid-pfa";
    case ErrorKind::InvalidParameters: return "invalid-parameters";
    case ErrorKind::DegenerateSample: return "degenerate-sample";
    case ErrorKind::SpecMismatch: return "spec-mismatch";
    case ErrorKind::WindowTooLarge: return "window-too-large";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown-error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

}  // namespace detail
}  // namespace pareto_cfar

#endif  // PARETO_CFAR_ERRORS_HPP_
