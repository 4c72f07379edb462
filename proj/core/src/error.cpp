#include "intellichain/error.hpp"

namespace intellichain {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::DuplicateAlias: return "DuplicateAlias";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::SelfLoopEdge: return "SelfLoopEdge";
    case ErrorCode::UnknownSeed: return "UnknownSeed";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::SessionCompleted: return "SessionCompleted";
    case ErrorCode::RoleOrderViolation: return "RoleOrderViolation";
    case ErrorCode::BackendFailure: return "BackendFailure";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::EmptyArmSet: return "EmptyArmSet";
    case ErrorCode::UnknownArm: return "UnknownArm";
    case ErrorCode::RewardOutOfRange: return "RewardOutOfRange";
    case ErrorCode::InfeasibleProblem: return "InfeasibleProblem";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace intellichain
