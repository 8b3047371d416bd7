#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vcmbench/bridge/backend.hpp"
#include "vcmbench/bridge/tracker.hpp"
#include "vcmbench/metrics/bdrate.hpp"

namespace vcmbench {

// Shortest decimal that reads back to the same double.
std::string format_number(double value);

// One JSON object per line: {"item_id","category","box":[x1,y1,x2,y2],"score"}.
std::string write_detections_jsonl(const std::vector<Detection>& detections);
std::vector<Detection> parse_detections_jsonl(std::string_view text);

// Detection lines plus "frame" and "track_id".
std::string write_tracks_jsonl(const std::vector<TrackedBox>& tracks);
std::vector<TrackedBox> parse_tracks_jsonl(std::string_view text);

// "label,qp,rate,accuracy" header, one row per point, LF endings.
std::string write_curve_csv(const std::vector<RateAccuracyCurve>& curves);
// Rows are grouped into curves by label, in first-appearance order.
std::vector<RateAccuracyCurve> parse_curve_csv(std::string_view text);

}  // namespace vcmbench
