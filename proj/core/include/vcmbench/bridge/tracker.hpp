#pragma once

#include <vector>

#include "vcmbench/bridge/backend.hpp"

namespace vcmbench {

struct TrackedBox {
  int frame_index = 0;
  int track_id = 0;
  Detection detection;
};

inline constexpr double kTrackerMinIou = 0.3;

// Greedy frame-to-frame association. Detections of frame t are visited in
// order; each takes the unmatched track of frame t-1 with the highest
// IoU >= 0.3 (ties to the lower id) or opens a new track. A track missing
// from one frame is not resumed. Ids start at 1.
std::vector<TrackedBox> track_detections(const std::vector<std::vector<Detection>>& frames);

}  // namespace vcmbench
