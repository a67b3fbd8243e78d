#pragma once

#include <stdexcept>
#include <string>

namespace stringc {

// Every failure raised by the library derives from Error; the concrete type
// names the condition so callers (and the CLI exit-code mapping) can branch.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define STRINGC_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

STRINGC_DEFINE_ERROR(ZeroLeadingCoefficient);
STRINGC_DEFINE_ERROR(GridOverflow);
STRINGC_DEFINE_ERROR(SchemaError);
STRINGC_DEFINE_ERROR(GradingError);
STRINGC_DEFINE_ERROR(IntegrationDegreeError);
STRINGC_DEFINE_ERROR(DegreeError);
STRINGC_DEFINE_ERROR(OddInput);
STRINGC_DEFINE_ERROR(DomainError);
STRINGC_DEFINE_ERROR(UnsupportedDimension);
STRINGC_DEFINE_ERROR(SpecViolation);
STRINGC_DEFINE_ERROR(CaseHypothesisError);
STRINGC_DEFINE_ERROR(InvariantError);
STRINGC_DEFINE_ERROR(UnsupportedWeight);
STRINGC_DEFINE_ERROR(InsufficientOrder);

#undef STRINGC_DEFINE_ERROR

}  // namespace stringc
