#include "symidx/errors.hpp"

namespace symidx {

const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrKind::NotSymplectic: return "NOT_SYMPLECTIC";
    case ErrKind::NotAntiSymplectic: return "NOT_ANTI_SYMPLECTIC";
    case ErrKind::Degenerate: return "DEGENERATE";
    case ErrKind::IrregularCrossing: return "IRREGULAR_CROSSING";
    case ErrKind::Unresolved: return "UNRESOLVED";
    case ErrKind::DegenerateEndpoint: return "DEGENERATE_ENDPOINT";
    case ErrKind::Transversality: return "TRANSVERSALITY";
    case ErrKind::Nondegeneracy: return "NONDEGENERACY";
    case ErrKind::UnknownClass: return "UNKNOWN_CLASS";
    case ErrKind::Parse: return "PARSE_ERROR";
    case ErrKind::Mismatch: return "MISMATCH";
    case ErrKind::OutOfRange: return "OUT_OF_RANGE";
    case ErrKind::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Error::Error(ErrKind kind, const std::string& msg)
    : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace symidx
