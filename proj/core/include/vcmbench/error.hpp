#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcmbench {

// Error categories surfaced to callers. The CLI maps the first group
// (input problems) to exit code 1 and the rest to exit code 2.
enum class ErrorKind {
  kValidation,
  kParse,
  kUnsupported,
  kIncomplete,
  kOverlap,
  kMonotonicity,
  kTruncation,
  kFormat,
  kCorruption,
  kAdapter,
  kHandshake,
  kProtocol,
  kSession,
  kBackend,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// True for errors caused by the caller's input rather than by a failing
// stage at runtime.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Error reported by an inference backend; `code` is the protocol error code
// (e.g. "unknown_split").
class BackendError : public Error {
 public:
  BackendError(std::string code, const std::string& message)
      : Error(ErrorKind::kBackend, code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace vcmbench
