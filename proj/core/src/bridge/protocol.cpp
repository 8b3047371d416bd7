#include "vcmbench/bridge/protocol.hpp"

#include <istream>
#include <ostream>

#include "bridge/protocol_json.hpp"
#include "vcmbench/error.hpp"

namespace vcmbench {

std::string_view to_string(Task task) {
  return task == Task::kDetection ? "detection" : "tracking";
}

Task parse_task(std::string_view text) {
  if (text == "detection") return Task::kDetection;
  if (text == "tracking") return Task::kTracking;
  fail(ErrorKind::kProtocol, "unknown task '" + std::string(text) + "'");
}

bool BackendCapabilities::supports(Task task) const {
  for (Task t : tasks) {
    if (t == task) return true;
  }
  return false;
}

const SplitPointSpec* BackendCapabilities::split(std::string_view tag) const {
  for (const auto& s : split_tags) {
    if (s.tag == tag) return &s;
  }
  return nullptr;
}

namespace protocol {

json detection_to_json(const Detection& d) {
  return {{"category", d.category},
          {"box", {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max}},
          {"score", d.score}};
}

Detection detection_from_json(const json& j) {
  Detection d;
  d.category = j.at("category").get<std::string>();
  const auto& b = j.at("box");
  if (!b.is_array() || b.size() != 4) throw BackendError("bad_request", "box must have 4 numbers");
  d.box = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
  d.score = j.at("score").get<double>();
  if (auto it = j.find("item_id"); it != j.end() && it->is_string()) {
    d.item_id = it->get<std::string>();
  }
  return d;
}

json detections_response(const std::vector<Detection>& dets) {
  json arr = json::array();
  for (const auto& d : dets) arr.push_back(detection_to_json(d));
  return {{"type", "detections"}, {"detections", std::move(arr)}};
}

std::vector<Detection> detections_from_response(const json& j) {
  std::vector<Detection> out;
  for (const auto& d : j.at("detections")) out.push_back(detection_from_json(d));
  return out;
}

json capabilities_to_json(const BackendCapabilities& caps) {
  json tasks = json::array();
  for (Task t : caps.tasks) tasks.push_back(std::string(to_string(t)));
  json splits = json::array();
  for (const auto& s : caps.split_tags) {
    splits.push_back(
        {{"model_name", s.model_name}, {"tag", s.tag}, {"tensor_count", s.tensor_count}});
  }
  return {{"type", "hello"},
          {"protocol_version", caps.protocol_version},
          {"tasks", std::move(tasks)},
          {"split_tags", std::move(splits)}};
}

BackendCapabilities capabilities_from_json(const json& j) {
  BackendCapabilities caps;
  caps.protocol_version = j.at("protocol_version").get<int>();
  for (const auto& t : j.at("tasks")) caps.tasks.push_back(parse_task(t.get<std::string>()));
  if (auto it = j.find("split_tags"); it != j.end()) {
    for (const auto& s : *it) {
      caps.split_tags.push_back({s.at("model_name").get<std::string>(),
                                 s.at("tag").get<std::string>(),
                                 s.at("tensor_count").get<int>()});
    }
  }
  return caps;
}

json shape_to_json(const TensorShape& s) { return {s.channels, s.height, s.width}; }

TensorShape shape_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw BackendError("bad_request", "shape must have 3 dimensions");
  }
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

json error_response(const std::string& code, const std::string& message) {
  return {{"type", "error"}, {"code", code}, {"message", message}};
}

}  // namespace protocol

std::string handle_request_line(Backend& backend, std::string_view line, bool& shutdown) {
  using protocol::json;
  shutdown = false;
  json req;
  try {
    req = json::parse(line);
  } catch (const json::exception& e) {
    return protocol::error_response("bad_request", std::string("malformed JSON: ") + e.what())
        .dump();
  }
  try {
    if (!req.is_object() || !req.contains("type") || !req["type"].is_string()) {
      return protocol::error_response("bad_request", "request needs a string 'type'").dump();
    }
    const std::string type = req["type"].get<std::string>();
    if (type == "hello") {
      return protocol::capabilities_to_json(backend.hello()).dump();
    }
    if (type == "infer_full") {
      return protocol::detections_response(
                 backend.infer_full(req.at("image_path").get<std::string>()))
          .dump();
    }
    if (type == "part1") {
      const auto shapes = backend.part1(req.at("image_path").get<std::string>(),
                                        req.at("split_tag").get<std::string>(),
                                        req.at("out_tensor_path").get<std::string>());
      json arr = json::array();
      for (const auto& s : shapes) arr.push_back(protocol::shape_to_json(s));
      return json{{"type", "part1"}, {"shapes", std::move(arr)}}.dump();
    }
    if (type == "part2") {
      return protocol::detections_response(
                 backend.part2(req.at("tensor_path").get<std::string>(),
                               req.at("split_tag").get<std::string>(),
                               req.at("image_width").get<int>(),
                               req.at("image_height").get<int>()))
          .dump();
    }
    if (type == "shutdown") {
      backend.shutdown();
      shutdown = true;
      return json{{"type", "shutdown"}}.dump();
    }
    return protocol::error_response("unknown_type", "unknown request type '" + type + "'")
        .dump();
  } catch (const BackendError& e) {
    return protocol::error_response(e.code(), e.what()).dump();
  } catch (const json::exception& e) {
    return protocol::error_response("bad_request", e.what()).dump();
  } catch (const Error& e) {
    return protocol::error_response(std::string(to_string(e.kind())), e.what()).dump();
  } catch (const std::exception& e) {
    return protocol::error_response("internal", e.what()).dump();
  }
}

void serve_backend(Backend& backend, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    bool shutdown = false;
    out << handle_request_line(backend, line, shutdown) << '\n';
    out.flush();
    if (shutdown) break;
  }
}

}  // namespace vcmbench
