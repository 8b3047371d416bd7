#include "vcmbench/metrics/mota.hpp"

#include <algorithm>
#include <map>

#include "vcmbench/error.hpp"
#include "vcmbench/metrics/hungarian.hpp"

namespace vcmbench {

std::optional<MotaResult> evaluate_mota(const std::vector<TrackedBox>& tracked,
                                        const std::vector<GroundTruthObject>& ground_truth) {
  if (ground_truth.empty()) return std::nullopt;

  std::map<int, std::vector<const GroundTruthObject*>> gt_frames;
  for (const auto& g : ground_truth) {
    if (!g.frame_index || !g.track_id) {
      fail(ErrorKind::kValidation, "tracking ground truth for '" + g.item_id +
                                       "' lacks frame_index or track_id");
    }
    gt_frames[*g.frame_index].push_back(&g);
  }
  std::map<int, std::vector<const TrackedBox*>> hyp_frames;
  for (const auto& t : tracked) hyp_frames[t.frame_index].push_back(&t);

  std::vector<int> frames;
  for (const auto& [f, _] : gt_frames) frames.push_back(f);
  for (const auto& [f, _] : hyp_frames) {
    if (!gt_frames.count(f)) frames.push_back(f);
  }
  std::sort(frames.begin(), frames.end());

  MotaResult r;
  std::map<int, int> last_match;  // gt id -> tracker id
  for (int f : frames) {
    static const std::vector<const GroundTruthObject*> kNoGt;
    static const std::vector<const TrackedBox*> kNoHyp;
    const auto& gts = gt_frames.count(f) ? gt_frames[f] : kNoGt;
    const auto& hyps = hyp_frames.count(f) ? hyp_frames[f] : kNoHyp;
    std::vector<int> gt_to_hyp(gts.size(), -1);
    std::vector<bool> hyp_used(hyps.size(), false);

    for (std::size_t g = 0; g < gts.size(); ++g) {
      const auto it = last_match.find(*gts[g]->track_id);
      if (it == last_match.end()) continue;
      for (std::size_t h = 0; h < hyps.size(); ++h) {
        if (hyp_used[h] || hyps[h]->track_id != it->second) continue;
        if (iou(gts[g]->box, hyps[h]->detection.box) >= kMotaMinIou) {
          gt_to_hyp[g] = static_cast<int>(h);
          hyp_used[h] = true;
        }
        break;
      }
    }

    std::vector<std::size_t> free_gt, free_hyp;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gt_to_hyp[g] < 0) free_gt.push_back(g);
    }
    for (std::size_t h = 0; h < hyps.size(); ++h) {
      if (!hyp_used[h]) free_hyp.push_back(h);
    }
    if (!free_gt.empty() && !free_hyp.empty()) {
      std::vector<std::vector<double>> cost(free_gt.size(),
                                            std::vector<double>(free_hyp.size(), 0.0));
      for (std::size_t i = 0; i < free_gt.size(); ++i) {
        for (std::size_t j = 0; j < free_hyp.size(); ++j) {
          const double v = iou(gts[free_gt[i]]->box, hyps[free_hyp[j]]->detection.box);
          if (v >= kMotaMinIou) cost[i][j] = -v;
        }
      }
      const auto assignment = solve_assignment(cost);
      for (std::size_t i = 0; i < free_gt.size(); ++i) {
        const int j = assignment[i];
        if (j < 0 || cost[i][static_cast<std::size_t>(j)] == 0.0) continue;
        gt_to_hyp[free_gt[i]] = static_cast<int>(free_hyp[static_cast<std::size_t>(j)]);
        hyp_used[free_hyp[static_cast<std::size_t>(j)]] = true;
      }
    }

    for (std::size_t g = 0; g < gts.size(); ++g) {
      r.gt_count += 1;
      if (gt_to_hyp[g] < 0) {
        r.false_negatives += 1;
        continue;
      }
      r.matches += 1;
      const int gt_id = *gts[g]->track_id;
      const int hyp_id = hyps[static_cast<std::size_t>(gt_to_hyp[g])]->track_id;
      const auto it = last_match.find(gt_id);
      if (it != last_match.end() && it->second != hyp_id) r.id_switches += 1;
      last_match[gt_id] = hyp_id;
    }
    for (bool used : hyp_used) {
      if (!used) r.false_positives += 1;
    }
  }
  r.mota = 1.0 - static_cast<double>(r.false_negatives + r.false_positives + r.id_switches) /
                     static_cast<double>(r.gt_count);
  return r;
}

}  // namespace vcmbench
