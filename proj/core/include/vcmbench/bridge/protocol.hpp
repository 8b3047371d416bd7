#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "vcmbench/bridge/backend.hpp"

namespace vcmbench {

// Line-delimited JSON protocol between the harness and a backend process.
//
//   -> {"type":"hello","protocol_version":1}
//   <- {"type":"hello","protocol_version":1,"tasks":["detection",...],
//       "split_tags":[{"model_name":..,"tag":..,"tensor_count":..}]}
//   -> {"type":"infer_full","image_path":..}
//   <- {"type":"detections","detections":[{"category":..,"box":[x1,y1,x2,y2],"score":..}]}
//   -> {"type":"part1","image_path":..,"split_tag":..,"out_tensor_path":..}
//   <- {"type":"part1","shapes":[[c,h,w],...]}
//   -> {"type":"part2","tensor_path":..,"split_tag":..,"image_width":..,"image_height":..}
//   <- {"type":"detections",...}
//   -> {"type":"shutdown"}
//   <- {"type":"shutdown"}
// Any request may instead be answered with
//   {"type":"error","code":..,"message":..}

// Answers requests read from `in` until shutdown or EOF. Malformed lines
// get a "bad_request" error response; the loop keeps going.
void serve_backend(Backend& backend, std::istream& in, std::ostream& out);

// Handles one request line and returns the response line. Sets `shutdown`
// when the request asked the server to stop.
std::string handle_request_line(Backend& backend, std::string_view line, bool& shutdown);

}  // namespace vcmbench
