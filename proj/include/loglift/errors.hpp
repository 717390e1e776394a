#pragma once

#include <stdexcept>
#include <string>

namespace loglift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LOGLIFT_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(std::string(#Name ": ") + what) {} \
  };

LOGLIFT_DEFINE_ERROR(DivisionByIndistinguishableZero)
LOGLIFT_DEFINE_ERROR(OutsideConvergenceDomain)
LOGLIFT_DEFINE_ERROR(PrecisionLoss)
LOGLIFT_DEFINE_ERROR(SingularMatrix)
LOGLIFT_DEFINE_ERROR(NotNilpotent)
LOGLIFT_DEFINE_ERROR(NotUnipotent)
LOGLIFT_DEFINE_ERROR(NotCommuting)
LOGLIFT_DEFINE_ERROR(NotSplitInBox)
LOGLIFT_DEFINE_ERROR(NotInParabolic)
LOGLIFT_DEFINE_ERROR(NotSpecialLinear)
LOGLIFT_DEFINE_ERROR(NotNilpotentAction)
LOGLIFT_DEFINE_ERROR(NotInCategory)
LOGLIFT_DEFINE_ERROR(DepthOverflow)
LOGLIFT_DEFINE_ERROR(MissingSqrtP)
LOGLIFT_DEFINE_ERROR(IncompatibleLogarithm)
LOGLIFT_DEFINE_ERROR(IncompatibleSubtorus)
LOGLIFT_DEFINE_ERROR(FieldMismatch)
LOGLIFT_DEFINE_ERROR(DimensionMismatch)
LOGLIFT_DEFINE_ERROR(ParseError)
LOGLIFT_DEFINE_ERROR(SchemaError)
LOGLIFT_DEFINE_ERROR(InvariantViolation)

#undef LOGLIFT_DEFINE_ERROR

}  // namespace loglift
