#include "vcmbench/metrics/map.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace vcmbench {

namespace {

// numpy.linspace: start + i * step, with the last point pinned to stop.
template <std::size_t N>
std::array<double, N> linspace(double start, double stop) {
  std::array<double, N> out{};
  const double step = (stop - start) / static_cast<double>(N - 1);
  for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<double>(i) * step + start;
  out[N - 1] = stop;
  return out;
}

struct ImageKey {
  std::string item_id;
  std::string category;
  auto operator<=>(const ImageKey&) const = default;
};

}  // namespace

const std::array<double, kIouThresholdCount>& iou_thresholds() {
  static const auto grid = linspace<kIouThresholdCount>(0.5, 0.95);
  return grid;
}

const std::array<double, kRecallPointCount>& recall_points() {
  static const auto grid = linspace<kRecallPointCount>(0.0, 1.0);
  return grid;
}

double average_precision(const std::vector<bool>& matched, int gt_count) {
  const std::size_t n = matched.size();
  std::vector<double> recall(n), precision(n);
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    (matched[i] ? tp : fp) += 1.0;
    recall[i] = tp / gt_count;
    precision[i] = tp / (tp + fp);
  }
  for (std::size_t i = n; i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double sum = 0.0;
  for (double r : recall_points()) {
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / kRecallPointCount;
}

MapResult evaluate_map(const std::vector<Detection>& detections,
                       const std::vector<GroundTruthObject>& ground_truth) {
  std::map<ImageKey, std::vector<const GroundTruthObject*>> gt_by_key;
  std::map<std::string, int> gt_count;
  for (const auto& g : ground_truth) {
    gt_by_key[{g.item_id, g.category}].push_back(&g);
    ++gt_count[g.category];
  }
  std::map<ImageKey, std::vector<const Detection*>> det_by_key;
  for (const auto& d : detections) det_by_key[{d.item_id, d.category}].push_back(&d);

  MapResult result;
  for (const auto& [key, dets] : det_by_key) {
    if (!gt_count.count(key.category) &&
        std::find(result.excluded_categories.begin(), result.excluded_categories.end(),
                  key.category) == result.excluded_categories.end()) {
      result.excluded_categories.push_back(key.category);
    }
  }
  std::sort(result.excluded_categories.begin(), result.excluded_categories.end());

  const auto& thresholds = iou_thresholds();
  for (const auto& [category, count] : gt_count) {
    CategoryAp cat{category, {}};
    for (int t = 0; t < kIouThresholdCount; ++t) {
      // (score, match flag) gathered image by image, then ranked globally.
      std::vector<std::pair<double, bool>> ranked;
      for (const auto& [key, dets_in] : det_by_key) {
        if (key.category != category) continue;
        std::vector<const Detection*> dets = dets_in;
        std::stable_sort(dets.begin(), dets.end(), [](const Detection* a, const Detection* b) {
          return a->score > b->score;
        });
        if (dets.size() > kMaxDetectionsPerImage) dets.resize(kMaxDetectionsPerImage);
        const auto git = gt_by_key.find(key);
        std::vector<bool> gt_used(git == gt_by_key.end() ? 0 : git->second.size(), false);
        for (const Detection* d : dets) {
          int best = -1;
          double best_iou = 0.0;
          for (std::size_t g = 0; g < gt_used.size(); ++g) {
            if (gt_used[g]) continue;
            const double v = iou(d->box, git->second[g]->box);
            if (v >= thresholds[static_cast<std::size_t>(t)] && (best < 0 || v > best_iou)) {
              best = static_cast<int>(g);
              best_iou = v;
            }
          }
          if (best >= 0) gt_used[static_cast<std::size_t>(best)] = true;
          ranked.emplace_back(d->score, best >= 0);
        }
      }
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      std::vector<bool> matched;
      matched.reserve(ranked.size());
      for (const auto& r : ranked) matched.push_back(r.second);
      cat.ap[static_cast<std::size_t>(t)] = average_precision(matched, count);
    }
    result.categories.push_back(std::move(cat));
  }

  if (result.categories.empty()) return result;
  double total = 0.0;
  for (int t = 0; t < kIouThresholdCount; ++t) {
    double s = 0.0;
    for (const auto& c : result.categories) s += c.ap[static_cast<std::size_t>(t)];
    result.ap_per_threshold[static_cast<std::size_t>(t)] =
        s / static_cast<double>(result.categories.size());
    total += result.ap_per_threshold[static_cast<std::size_t>(t)];
  }
  result.map = total / kIouThresholdCount;
  return result;
}

}  // namespace vcmbench
