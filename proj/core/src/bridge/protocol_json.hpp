#pragma once

#include <json.hpp>

#include "vcmbench/bridge/backend.hpp"

namespace vcmbench::protocol {

using nlohmann::json;

json detection_to_json(const Detection& d);
Detection detection_from_json(const json& j);
json detections_response(const std::vector<Detection>& dets);
std::vector<Detection> detections_from_response(const json& j);

json capabilities_to_json(const BackendCapabilities& caps);
BackendCapabilities capabilities_from_json(const json& j);

json shape_to_json(const TensorShape& s);
TensorShape shape_from_json(const json& j);

json error_response(const std::string& code, const std::string& message);

}  // namespace vcmbench::protocol
