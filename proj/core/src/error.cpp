#include "kurihara/error.hpp"

namespace kurihara {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime:
      return "NotPrime";
    case ErrorKind::RamifiedExtension:
      return "RamifiedExtension";
    case ErrorKind::MixedRings:
      return "MixedRings";
    case ErrorKind::BadSubgroup:
      return "BadSubgroup";
    case ErrorKind::OrderMismatch:
      return "OrderMismatch";
    case ErrorKind::NotPrimitive:
      return "NotPrimitive";
    case ErrorKind::RamifiedPrime:
      return "RamifiedPrime";
    case ErrorKind::AmbiguousCharacter:
      return "AmbiguousCharacter";
    case ErrorKind::SingularModel:
      return "SingularModel";
    case ErrorKind::BadReduction:
      return "BadReduction";
    case ErrorKind::SearchExhausted:
      return "SearchExhausted";
    case ErrorKind::NonMinimalModel:
      return "NonMinimalModel";
    case ErrorKind::OutOfMemory:
      return "OutOfMemory";
    case ErrorKind::BadLevelPrime:
      return "BadLevelPrime";
    case ErrorKind::EigenspaceNotOneDimensional:
      return "EigenspaceNotOneDimensional";
    case ErrorKind::NormalizationMismatch:
      return "NormalizationMismatch";
    case ErrorKind::DenominatorNotPrimeToP:
      return "DenominatorNotPrimeToP";
    case ErrorKind::PrecisionUnreachable:
      return "PrecisionUnreachable";
    case ErrorKind::ConductorTooLarge:
      return "ConductorTooLarge";
    case ErrorKind::NotCoprime:
      return "NotCoprime";
    case ErrorKind::PrecisionCollapse:
      return "PrecisionCollapse";
    case ErrorKind::GroupMismatch:
      return "GroupMismatch";
    case ErrorKind::InconsistentLadder:
      return "InconsistentLadder";
    case ErrorKind::ParityViolation:
      return "ParityViolation";
    case ErrorKind::NotReached:
      return "NotReached";
    case ErrorKind::OrderDivisibleByP:
      return "OrderDivisibleByP";
    case ErrorKind::OrbitInconsistency:
      return "OrbitInconsistency";
    case ErrorKind::InvalidArgument:
      return "InvalidArgument";
    case ErrorKind::CacheCorrupt:
      return "CacheCorrupt";
    case ErrorKind::Config:
      return "Config";
  }
  return "Unknown";
}

}  // namespace kurihara
