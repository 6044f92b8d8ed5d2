#pragma once

#include <stdexcept>
#include <string>

namespace ihcoh {

enum class ErrorKind {
  NotInjective,
  NotSaturated,
  SuppliedSectionInvalid,
  ZeroVector,
  RankMismatch,
  NotStrictlyConvex,
  NotAFan,
  TauNotInFan,
  LinealityInInput,
  EmptyInput,
  NotComplete,
  DepthExceeded,
  InvalidDivisorialFan,
  SigmaZNotComplete,
  TailNotFullDim,
  InternalInconsistency,
  NonIntegralGenus,
  NotHomogeneous,
  NotRelevant,
  Overflow,
  InvalidInput,
};

const char* kind_name(ErrorKind k);

// Semantic failure of an engine operation. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Input that cannot be parsed into the expected schema. The CLI maps these to exit code 2.
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ihcoh
