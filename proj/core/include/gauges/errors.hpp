#pragma once

#include <stdexcept>
#include <string>

namespace gauges {

/// Base class for all engine errors. `kind()` is a stable machine tag,
/// `what()` carries the human diagnostic.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define GAUGES_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
  public:                                                           \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}    \
  }

GAUGES_DEFINE_ERROR(RankMismatch);
GAUGES_DEFINE_ERROR(DivisionByZero);
GAUGES_DEFINE_ERROR(InsufficientPrecision);
GAUGES_DEFINE_ERROR(OddExponent);
GAUGES_DEFINE_ERROR(NonSquareResidue);
GAUGES_DEFINE_ERROR(NotReachable);
GAUGES_DEFINE_ERROR(NegativeValue);
GAUGES_DEFINE_ERROR(ZeroParameter);
GAUGES_DEFINE_ERROR(EmbeddingNotMultiplicative);
GAUGES_DEFINE_ERROR(FieldMismatch);
GAUGES_DEFINE_ERROR(SingularBase);
GAUGES_DEFINE_ERROR(IncompatibleCoarsenings);
GAUGES_DEFINE_ERROR(LiftConstraintViolated);
GAUGES_DEFINE_ERROR(MatchAmbiguous);
GAUGES_DEFINE_ERROR(NotSemisimple);
GAUGES_DEFINE_ERROR(UnsupportedCharacteristic);
GAUGES_DEFINE_ERROR(UnsupportedScenario);
GAUGES_DEFINE_ERROR(GammaOutOfRange);
GAUGES_DEFINE_ERROR(ParseError);
GAUGES_DEFINE_ERROR(UnresolvedReference);
GAUGES_DEFINE_ERROR(InternalCheckFailed);

#undef GAUGES_DEFINE_ERROR

}  // namespace gauges
