#pragma once

#include <array>
#include <string>
#include <vector>

#include "vcmbench/bridge/backend.hpp"
#include "vcmbench/dataset/annotations.hpp"

namespace vcmbench {

inline constexpr int kIouThresholdCount = 10;
inline constexpr int kRecallPointCount = 101;
inline constexpr int kMaxDetectionsPerImage = 100;

// 0.50, 0.55, ..., 0.95 and 0.00, 0.01, ..., 1.00, built the same way as the
// COCO evaluator's grids so threshold comparisons agree bit for bit.
const std::array<double, kIouThresholdCount>& iou_thresholds();
const std::array<double, kRecallPointCount>& recall_points();

struct CategoryAp {
  std::string category;
  std::array<double, kIouThresholdCount> ap{};
};

struct MapResult {
  double map = 0.0;
  // Mean over evaluated categories, per threshold.
  std::array<double, kIouThresholdCount> ap_per_threshold{};
  std::vector<CategoryAp> categories;            // categories with ground truth
  std::vector<std::string> excluded_categories;  // detections without ground truth
};

// Average precision for one category at one threshold from detections
// already in ranking order. `matched[i]` says whether detection i is a true
// positive; `gt_count` > 0.
double average_precision(const std::vector<bool>& matched, int gt_count);

// COCO-style bbox mAP. Images are keyed by item_id. Per image and category
// detections are ranked by descending score (stable), capped at 100, and
// greedily matched to the unmatched ground truth with the highest
// IoU >= threshold (ties to the earlier object). Categories present only in
// detections are excluded from the mean. Empty ground truth gives mAP 0.
MapResult evaluate_map(const std::vector<Detection>& detections,
                       const std::vector<GroundTruthObject>& ground_truth);

}  // namespace vcmbench
