#pragma once

#include <stdexcept>
#include <string>

namespace wirecov {

/// Base of every error thrown by the library. `kind()` is a stable
/// machine-readable tag (used by the CLI report and by tests).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define WIRECOV_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

WIRECOV_DEFINE_ERROR(ValidationError);
WIRECOV_DEFINE_ERROR(DegenerateWire);
WIRECOV_DEFINE_ERROR(OutOfWorkspace);
WIRECOV_DEFINE_ERROR(ApexExcluded);
WIRECOV_DEFINE_ERROR(DuplicateGenerators);
WIRECOV_DEFINE_ERROR(DegenerateTriangle);
WIRECOV_DEFINE_ERROR(QuadratureFailure);
WIRECOV_DEFINE_ERROR(SingularPoint);
WIRECOV_DEFINE_ERROR(OutOfRegion);
WIRECOV_DEFINE_ERROR(TooLarge);
WIRECOV_DEFINE_ERROR(ParseError);
WIRECOV_DEFINE_ERROR(FrameOutOfRange);
WIRECOV_DEFINE_ERROR(MaxStepsExceeded);

#undef WIRECOV_DEFINE_ERROR

/// Newton inversion gave up; carries the best residual reached.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double residual)
      : Error("NoConvergence", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace wirecov
