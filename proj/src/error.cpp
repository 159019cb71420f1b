#include "gweave/error.hpp"

namespace gweave {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::TooManyBlocks: return "TooManyBlocks";
    case ErrorKind::NotWoven: return "NotWoven";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::EnvelopeViolation: return "EnvelopeViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace gweave
