#pragma once

#include <optional>
#include <vector>

#include "vcmbench/bridge/tracker.hpp"
#include "vcmbench/dataset/annotations.hpp"

namespace vcmbench {

inline constexpr double kMotaMinIou = 0.5;

struct MotaResult {
  double mota = 0.0;
  long long false_negatives = 0;
  long long false_positives = 0;
  long long id_switches = 0;
  long long matches = 0;
  long long gt_count = 0;
};

// CLEAR-MOT over frames. Ground truth needs frame_index and track_id.
// Per frame: correspondences from earlier frames that still overlap with
// IoU >= 0.5 are kept; the rest are assigned to maximize total IoU among
// pairs with IoU >= 0.5. An identity switch is a matched object whose
// tracker id differs from the one it was last matched to.
// Returns nullopt when there is no ground truth.
std::optional<MotaResult> evaluate_mota(const std::vector<TrackedBox>& tracked,
                                        const std::vector<GroundTruthObject>& ground_truth);

}  // namespace vcmbench
