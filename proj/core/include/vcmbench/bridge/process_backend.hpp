#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "vcmbench/bridge/backend.hpp"

namespace vcmbench {

class ChildProcess;

// Session with a backend child process. The constructor launches the
// command and performs the hello handshake.
//
// Errors: kHandshake when the hello exchange fails or the protocol version
// differs; kSession when the child dies or stops answering; kProtocol for a
// malformed or unexpected response line; BackendError for error responses.
class ProcessBackend final : public Backend {
 public:
  explicit ProcessBackend(const std::string& command,
                          std::chrono::milliseconds timeout = std::chrono::seconds(60));
  ~ProcessBackend() override;

  BackendCapabilities hello() override { return capabilities_; }
  std::vector<Detection> infer_full(const std::filesystem::path& image) override;
  std::vector<TensorShape> part1(const std::filesystem::path& image,
                                 const std::string& split_tag,
                                 const std::filesystem::path& out_tensor) override;
  std::vector<Detection> part2(const std::filesystem::path& tensor,
                               const std::string& split_tag, int image_width,
                               int image_height) override;
  void shutdown() override;

  // Sends one raw line and returns the raw response line.
  std::string exchange(const std::string& line);

 private:
  std::unique_ptr<ChildProcess> child_;
  std::chrono::milliseconds timeout_;
  BackendCapabilities capabilities_;
  bool closed_ = false;
};

}  // namespace vcmbench
