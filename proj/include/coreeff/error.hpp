#pragma once

#include <stdexcept>
#include <string>

namespace coreeff {

enum class ErrorCode {
  UnboundSkeletonParam,
  UnboundDirtParam,
  UnknownOperation,
  UnknownBase,
  UnboundTypeParam,
  UnboundCoercionParam,
  EndpointMismatch,
  SkeletonMismatch,
  IllFormedContext,
  InvalidSignature,
  UnboundVar,
  TypeMismatch,
  OpNotInDirt,
  NotAFunction,
  WrongSkeleton,
  WrongEndpoints,
  UnmappedParam,
  Unsatisfiable,
  NotCanonical,
  MissingFamilyEntry,
  WrongDirection,
  DomainTooLarge,
  CounterexampleFound,
  InvalidInstantiation,
  ParseError,
  JudgmentError,
  InvalidArgument,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace coreeff
