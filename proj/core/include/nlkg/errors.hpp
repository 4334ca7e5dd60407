#pragma once

#include <stdexcept>
#include <string>

namespace nlkg {

// Error taxonomy shared across the library. Each type corresponds to one
// failure mode of the numerical contracts; callers catch by type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define NLKG_DEFINE_ERROR(Name)                                   \
  struct Name : Error {                                           \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

NLKG_DEFINE_ERROR(NonFiniteIntegrand);
NLKG_DEFINE_ERROR(AmplitudeOverflow);
NLKG_DEFINE_ERROR(GridMismatch);
NLKG_DEFINE_ERROR(InadmissiblePair);
NLKG_DEFINE_ERROR(NoRoot);
NLKG_DEFINE_ERROR(CutoffExceedsBox);
NLKG_DEFINE_ERROR(BracketFailure);
NLKG_DEFINE_ERROR(TMEstimateUnstable);
NLKG_DEFINE_ERROR(MinimizerStalled);
NLKG_DEFINE_ERROR(ModelOutsideClass);
NLKG_DEFINE_ERROR(ParamOutOfRange);
NLKG_DEFINE_ERROR(EmptyConstraint);
NLKG_DEFINE_ERROR(NumericalBreakdown);
NLKG_DEFINE_ERROR(PreconditionViolation);
NLKG_DEFINE_ERROR(IoError);

#undef NLKG_DEFINE_ERROR

}  // namespace nlkg
