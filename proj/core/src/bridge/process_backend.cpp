#include "vcmbench/bridge/process_backend.hpp"

#include "bridge/protocol_json.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/process.hpp"

namespace vcmbench {

namespace {

using protocol::json;

std::string with_stderr(std::string message, const ChildProcess& child) {
  std::string err = child.stderr_text();
  while (!err.empty() && (err.back() == '\n' || err.back() == '\r')) err.pop_back();
  if (!err.empty()) message += "; stderr: " + err;
  return message;
}

json parse_response(const std::string& line) {
  try {
    json j = json::parse(line);
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
      fail(ErrorKind::kProtocol, "response lacks a string 'type': " + line);
    }
    return j;
  } catch (const json::exception&) {
    fail(ErrorKind::kProtocol, "malformed response line: " + line);
  }
}

// Raises the backend's error response, or kProtocol when `type` is not the
// one expected.
void expect_type(const json& j, const char* type, const std::string& line) {
  const std::string got = j["type"].get<std::string>();
  if (got == "error") {
    throw BackendError(j.value("code", std::string("internal")),
                       j.value("message", std::string()));
  }
  if (got != type) {
    fail(ErrorKind::kProtocol,
         std::string("expected response type '") + type + "': " + line);
  }
}

template <typename F>
auto decode_fields(const std::string& line, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::kProtocol, std::string("bad response fields (") + e.what() + "): " + line);
  } catch (const BackendError& e) {
    fail(ErrorKind::kProtocol, std::string("bad response fields (") + e.what() + "): " + line);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kProtocol) {
      fail(ErrorKind::kProtocol, std::string(e.what()) + ": " + line);
    }
    throw;
  }
}

}  // namespace

ProcessBackend::ProcessBackend(const std::string& command, std::chrono::milliseconds timeout)
    : child_(std::make_unique<ChildProcess>(command)), timeout_(timeout) {
  std::string line;
  try {
    line = exchange(json{{"type", "hello"}, {"protocol_version", kProtocolVersion}}.dump());
  } catch (const Error& e) {
    fail(ErrorKind::kHandshake, std::string("hello failed: ") + e.what());
  }
  json j;
  try {
    j = parse_response(line);
    expect_type(j, "hello", line);
  } catch (const Error& e) {
    fail(ErrorKind::kHandshake, std::string("hello failed: ") + e.what());
  }
  try {
    capabilities_ = protocol::capabilities_from_json(j);
  } catch (const std::exception& e) {
    fail(ErrorKind::kHandshake, std::string("bad hello response (") + e.what() + "): " + line);
  }
  if (capabilities_.protocol_version != kProtocolVersion) {
    fail(ErrorKind::kHandshake, "backend speaks protocol version " +
                                    std::to_string(capabilities_.protocol_version) +
                                    ", expected " + std::to_string(kProtocolVersion));
  }
  if (capabilities_.tasks.empty()) {
    fail(ErrorKind::kHandshake, "backend advertises no tasks");
  }
}

ProcessBackend::~ProcessBackend() {
  try {
    shutdown();
  } catch (...) {
  }
}

std::string ProcessBackend::exchange(const std::string& line) {
  if (closed_) fail(ErrorKind::kSession, "session already shut down");
  if (!child_->write_line(line)) {
    fail(ErrorKind::kSession, with_stderr("backend closed its input", *child_));
  }
  auto response = child_->read_line(timeout_);
  if (!response) {
    const int code = child_->finish(std::chrono::milliseconds(200));
    closed_ = true;
    fail(ErrorKind::kSession,
         with_stderr("backend exited (status " + std::to_string(code) + ")", *child_));
  }
  return *response;
}

std::vector<Detection> ProcessBackend::infer_full(const std::filesystem::path& image) {
  const std::string line =
      exchange(json{{"type", "infer_full"}, {"image_path", image.string()}}.dump());
  const json j = parse_response(line);
  expect_type(j, "detections", line);
  return decode_fields(line, [&] { return protocol::detections_from_response(j); });
}

std::vector<TensorShape> ProcessBackend::part1(const std::filesystem::path& image,
                                               const std::string& split_tag,
                                               const std::filesystem::path& out_tensor) {
  const std::string line = exchange(json{{"type", "part1"},
                                         {"image_path", image.string()},
                                         {"split_tag", split_tag},
                                         {"out_tensor_path", out_tensor.string()}}
                                        .dump());
  const json j = parse_response(line);
  expect_type(j, "part1", line);
  return decode_fields(line, [&] {
    std::vector<TensorShape> shapes;
    for (const auto& s : j.at("shapes")) shapes.push_back(protocol::shape_from_json(s));
    return shapes;
  });
}

std::vector<Detection> ProcessBackend::part2(const std::filesystem::path& tensor,
                                             const std::string& split_tag, int image_width,
                                             int image_height) {
  const std::string line = exchange(json{{"type", "part2"},
                                         {"tensor_path", tensor.string()},
                                         {"split_tag", split_tag},
                                         {"image_width", image_width},
                                         {"image_height", image_height}}
                                        .dump());
  const json j = parse_response(line);
  expect_type(j, "detections", line);
  return decode_fields(line, [&] { return protocol::detections_from_response(j); });
}

void ProcessBackend::shutdown() {
  if (closed_) return;
  if (child_->write_line(json{{"type", "shutdown"}}.dump())) {
    try {
      child_->read_line(std::chrono::milliseconds(2000));
    } catch (const Error&) {
    }
  }
  closed_ = true;
  child_->finish();
}

}  // namespace vcmbench
