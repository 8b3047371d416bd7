#include "vcmbench/bridge/tracker.hpp"

namespace vcmbench {

std::vector<TrackedBox> track_detections(const std::vector<std::vector<Detection>>& frames) {
  std::vector<TrackedBox> out;
  std::vector<TrackedBox> previous;
  int next_id = 1;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    std::vector<TrackedBox> current;
    std::vector<bool> taken(previous.size(), false);
    for (const Detection& det : frames[f]) {
      int best = -1;
      double best_iou = kTrackerMinIou;
      for (std::size_t p = 0; p < previous.size(); ++p) {
        if (taken[p]) continue;
        const double v = iou(previous[p].detection.box, det.box);
        if (v < best_iou) continue;
        if (best < 0 || v > best_iou ||
            previous[p].track_id < previous[static_cast<std::size_t>(best)].track_id) {
          best = static_cast<int>(p);
          best_iou = v;
        }
      }
      TrackedBox tb;
      tb.frame_index = static_cast<int>(f);
      tb.detection = det;
      if (best >= 0) {
        taken[static_cast<std::size_t>(best)] = true;
        tb.track_id = previous[static_cast<std::size_t>(best)].track_id;
      } else {
        tb.track_id = next_id++;
      }
      current.push_back(tb);
    }
    out.insert(out.end(), current.begin(), current.end());
    previous = std::move(current);
  }
  return out;
}

}  // namespace vcmbench
