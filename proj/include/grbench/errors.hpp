#ifndef GRBENCH_ERRORS_HPP_
#define GRBENCH_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace grbench {

/// Failure categories surfaced by the harness. Transport failures (socket,
/// timeout) are distinct from query failures (the engine answered with an
/// error) so callers can tell an unreachable store from a rejected query.
enum class ErrorCode {
  invalid_argument,
  config,
  duplicate_node,
  unknown_node,
  unknown_edge,
  invalid_weight,
  infeasible_target,
  ingest,
  transport,
  query,
  io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::config: return "configuration error";
    case ErrorCode::duplicate_node: return "duplicate node";
    case ErrorCode::unknown_node: return "unknown node";
    case ErrorCode::unknown_edge: return "unknown edge";
    case ErrorCode::invalid_weight: return "invalid weight";
    case ErrorCode::infeasible_target: return "infeasible target";
    case ErrorCode::ingest: return "ingest error";
    case ErrorCode::transport: return "transport error";
    case ErrorCode::query: return "query error";
    case ErrorCode::io: return "io error";
  }
  return "error";
}

}  // namespace grbench

#endif  // GRBENCH_ERRORS_HPP_
