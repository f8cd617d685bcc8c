#pragma once

#include <stdexcept>
#include <string>

namespace pliag {

// Base for all toolkit errors. Every throw site uses one of the named
// subclasses below so callers can catch by failure class.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PLIAG_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                           \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

PLIAG_DEFINE_ERROR(DomainViolation);
PLIAG_DEFINE_ERROR(MissingModuli);
PLIAG_DEFINE_ERROR(DegeneratePair);
PLIAG_DEFINE_ERROR(InvalidRadius);
PLIAG_DEFINE_ERROR(InvalidData);
PLIAG_DEFINE_ERROR(SingularInput);
PLIAG_DEFINE_ERROR(Uninitialized);
PLIAG_DEFINE_ERROR(UnsupportedCombination);
PLIAG_DEFINE_ERROR(NonConvergence);
PLIAG_DEFINE_ERROR(DegenerateBeta);
PLIAG_DEFINE_ERROR(UnsupportedKeptComponent);
PLIAG_DEFINE_ERROR(BracketFailure);
PLIAG_DEFINE_ERROR(IncompatibleTag);
PLIAG_DEFINE_ERROR(DivergenceGuard);
PLIAG_DEFINE_ERROR(IndexOutOfTrace);
PLIAG_DEFINE_ERROR(UnknownSolutionSet);
PLIAG_DEFINE_ERROR(MissingGrowth);
PLIAG_DEFINE_ERROR(InitialDistanceTooLarge);
PLIAG_DEFINE_ERROR(ConditionViolated);
PLIAG_DEFINE_ERROR(InvalidInstance);
PLIAG_DEFINE_ERROR(DegenerateSample);
PLIAG_DEFINE_ERROR(InvalidConfig);

#undef PLIAG_DEFINE_ERROR

}  // namespace pliag
