#pragma once

#include <stdexcept>
#include <string>

namespace cmv {

// Every failure surfaced by the library carries one of these kinds, so
// callers (and the CLI exit-code contract) can dispatch without string
// matching.
enum class ErrorKind {
  Syntax,
  Reference,
  DuplicateId,
  UnknownMember,
  DanglingAction,
  BaseMismatch,
  ExprSyntax,
  Type,
  UnknownTransition,
  NotEnabled,
  UnpairedEvent,
  ColorMismatch,
  PortTag,
  StaleBinding,
  DivByZero,
  IndexOutOfRange,
  UnboundVariable,
  UnknownPredicate,
  UnknownTechnique,
  Io,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

} // namespace cmv
