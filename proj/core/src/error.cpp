#include "vcmbench/error.hpp"

namespace vcmbench {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kIncomplete: return "incomplete";
    case ErrorKind::kOverlap: return "overlap";
    case ErrorKind::kMonotonicity: return "monotonicity";
    case ErrorKind::kTruncation: return "truncation";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kCorruption: return "corruption";
    case ErrorKind::kAdapter: return "adapter";
    case ErrorKind::kHandshake: return "handshake";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kSession: return "session";
    case ErrorKind::kBackend: return "backend";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
    case ErrorKind::kParse:
    case ErrorKind::kUnsupported:
    case ErrorKind::kIncomplete:
    case ErrorKind::kOverlap:
    case ErrorKind::kMonotonicity:
      return true;
    default:
      return false;
  }
}

}  // namespace vcmbench
