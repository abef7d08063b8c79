#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kurihara {

/// Failure categories raised by the library. The pipeline maps these onto
/// exit codes and tags each one with the stage that produced it.
enum class ErrorKind {
  NotPrime,
  RamifiedExtension,
  MixedRings,
  BadSubgroup,
  OrderMismatch,
  NotPrimitive,
  RamifiedPrime,
  AmbiguousCharacter,
  SingularModel,
  BadReduction,
  SearchExhausted,
  NonMinimalModel,
  OutOfMemory,
  BadLevelPrime,
  EigenspaceNotOneDimensional,
  NormalizationMismatch,
  DenominatorNotPrimeToP,
  PrecisionUnreachable,
  ConductorTooLarge,
  NotCoprime,
  PrecisionCollapse,
  GroupMismatch,
  InconsistentLadder,
  ParityViolation,
  NotReached,
  OrderDivisibleByP,
  OrbitInconsistency,
  InvalidArgument,
  CacheCorrupt,
  Config,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kurihara
