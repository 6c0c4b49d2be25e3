#pragma once

#include <stdexcept>
#include <string>

namespace symidx {

/// Failure categories surfaced to callers and mapped to CLI exit codes.
enum class ErrKind {
  DimensionMismatch,
  NotSymplectic,
  NotAntiSymplectic,
  Degenerate,
  IrregularCrossing,
  Unresolved,
  DegenerateEndpoint,
  Transversality,
  Nondegeneracy,
  UnknownClass,
  Parse,
  Mismatch,
  OutOfRange,
  Internal,
};

const char* to_string(ErrKind k);

class Error : public std::runtime_error {
public:
  Error(ErrKind kind, const std::string& msg);
  ErrKind kind() const { return kind_; }

private:
  ErrKind kind_;
};

[[noreturn]] void fail(ErrKind kind, const std::string& msg);

}  // namespace symidx
