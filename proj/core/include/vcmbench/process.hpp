#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>

namespace vcmbench {

// Private directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "vcmbench");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  TempDir(TempDir&& other) noexcept;
  TempDir& operator=(TempDir&& other) noexcept;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;  // -1 when terminated by a signal
  std::string stderr_text;
  std::string stdout_text;
};

// Runs `command` through /bin/sh -c and waits. Output is captured through
// files in a private temp directory.
CommandResult run_shell(const std::string& command);

// Child process speaking line-delimited text over stdin/stdout. stderr is
// captured to a file so crashes can be reported with diagnostics.
class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command);
  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  // False when the child has closed its end.
  bool write_line(std::string_view line);

  // nullopt on EOF; throws kSession on timeout.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

  // Closes stdin and reaps the child, killing it after `grace`.
  int finish(std::chrono::milliseconds grace = std::chrono::milliseconds(2000));

  std::string stderr_text() const;
  bool running() const { return pid_ > 0; }

 private:
  TempDir dir_;
  pid_t pid_ = -1;
  int in_fd_ = -1;   // our write end -> child's stdin
  int out_fd_ = -1;  // child's stdout -> our read end
  std::string buffer_;
  int exit_code_ = -1;
};

// Substitutes {name} placeholders; unknown placeholders are left intact.
std::string render_template(
    std::string_view templ,
    std::initializer_list<std::pair<std::string_view, std::string>> values);

}  // namespace vcmbench
