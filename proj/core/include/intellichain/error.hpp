#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace intellichain {

enum class ErrorCode {
  // knowledge graph
  MalformedDocument,
  DuplicateNodeId,
  DuplicateAlias,
  DanglingEdge,
  SelfLoopEdge,
  UnknownSeed,
  // dialogue
  InvalidProblem,
  SessionCompleted,
  RoleOrderViolation,
  // agents / completion
  BackendFailure,
  MalformedResponse,
  ScriptExhausted,
  // adaptation
  EmptyArmSet,
  UnknownArm,
  RewardOutOfRange,
  // assessment
  InfeasibleProblem,
  // general
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every domain failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace intellichain
