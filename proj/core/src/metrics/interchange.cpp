#include "vcmbench/metrics/interchange.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>

#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

using nlohmann::json;

json detection_json(const Detection& d) {
  return {{"item_id", d.item_id},
          {"category", d.category},
          {"box", {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max}},
          {"score", d.score}};
}

Detection detection_from(const json& j) {
  Detection d;
  d.item_id = j.at("item_id").get<std::string>();
  d.category = j.at("category").get<std::string>();
  const auto& b = j.at("box");
  if (!b.is_array() || b.size() != 4) fail(ErrorKind::kParse, "box must hold 4 numbers");
  d.box = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
  d.score = j.at("score").get<double>();
  return d;
}

template <typename F>
void for_each_json_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      f(json::parse(line));
    } catch (const json::exception& e) {
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_row(std::string_view row) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T parse_field(const std::string& s, const char* name, std::size_t line_no) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::kParse, "curve CSV line " + std::to_string(line_no) + ": bad " + name +
                                " '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::kValidation, "cannot format a non-finite number");
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, r.ptr);
}

std::string write_detections_jsonl(const std::vector<Detection>& detections) {
  std::string out;
  for (const auto& d : detections) out += detection_json(d).dump() + "\n";
  return out;
}

std::vector<Detection> parse_detections_jsonl(std::string_view text) {
  std::vector<Detection> out;
  for_each_json_line(text, [&](const json& j) { out.push_back(detection_from(j)); });
  return out;
}

std::string write_tracks_jsonl(const std::vector<TrackedBox>& tracks) {
  std::string out;
  for (const auto& t : tracks) {
    json j = detection_json(t.detection);
    j["frame"] = t.frame_index;
    j["track_id"] = t.track_id;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<TrackedBox> parse_tracks_jsonl(std::string_view text) {
  std::vector<TrackedBox> out;
  for_each_json_line(text, [&](const json& j) {
    TrackedBox t;
    t.detection = detection_from(j);
    t.frame_index = j.at("frame").get<int>();
    t.track_id = j.at("track_id").get<int>();
    out.push_back(std::move(t));
  });
  return out;
}

std::string write_curve_csv(const std::vector<RateAccuracyCurve>& curves) {
  std::string out = "label,qp,rate,accuracy\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out += csv_field(c.label) + "," + std::to_string(p.qp) + "," + format_number(p.rate) +
             "," + format_number(p.accuracy) + "\n";
    }
  }
  return out;
}

std::vector<RateAccuracyCurve> parse_curve_csv(std::string_view text) {
  std::vector<RateAccuracyCurve> curves;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 4 && fields[0] == "label") continue;
    }
    if (fields.size() != 4) {
      fail(ErrorKind::kParse, "curve CSV line " + std::to_string(line_no) +
                                  ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    RatePoint p;
    p.label = fields[0];
    p.qp = parse_field<int>(fields[1], "qp", line_no);
    p.rate = parse_field<double>(fields[2], "rate", line_no);
    p.accuracy = parse_field<double>(fields[3], "accuracy", line_no);
    auto it = std::find_if(curves.begin(), curves.end(),
                           [&](const RateAccuracyCurve& c) { return c.label == p.label; });
    if (it == curves.end()) {
      curves.push_back({p.label, {}});
      it = curves.end() - 1;
    }
    it->points.push_back(std::move(p));
  }
  return curves;
}

}  // namespace vcmbench
