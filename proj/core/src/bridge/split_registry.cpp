#include "vcmbench/bridge/split_registry.hpp"

#include "vcmbench/error.hpp"

namespace vcmbench {

void SplitRegistry::add(SplitPointSpec spec) {
  if (spec.tensor_count < 1) {
    fail(ErrorKind::kValidation, "split point " + spec.tag + " needs tensor_count >= 1");
  }
  if (find(spec.model_name, spec.tag)) {
    fail(ErrorKind::kValidation,
         "split point (" + spec.model_name + ", " + spec.tag + ") already registered");
  }
  entries_.push_back(std::move(spec));
}

std::optional<SplitPointSpec> SplitRegistry::find(std::string_view model_name,
                                                  std::string_view tag) const {
  for (const auto& e : entries_) {
    if (e.model_name == model_name && e.tag == tag) return e;
  }
  return std::nullopt;
}

std::vector<SplitPointSpec> SplitRegistry::with_tag(std::string_view tag) const {
  std::vector<SplitPointSpec> out;
  for (const auto& e : entries_) {
    if (e.tag == tag) out.push_back(e);
  }
  return out;
}

const SplitRegistry& builtin_split_registry() {
  static const SplitRegistry registry = [] {
    SplitRegistry r;
    for (const char* rcnn : {"faster_rcnn_R_50_FPN_3x", "faster_rcnn_X_101_32x8d_FPN_3x",
                             "mask_rcnn_R_50_FPN_3x", "mask_rcnn_X_101_32x8d_FPN_3x"}) {
      r.add({rcnn, "r2", 1});
      r.add({rcnn, "c2", 1});
      r.add({rcnn, "fpn", 4});
    }
    r.add({"jde_1088x608", "dn53", 3});
    r.add({"jde_1088x608", "alt1", 3});
    r.add({"yolox_darknet53", "l13", 1});
    r.add({"yolox_darknet53", "l37", 1});
    r.add({"rtmo_multi_person_pose_estimation", "backbone", 2});
    r.add({"rtmo_multi_person_pose_estimation", "neck", 2});
    r.add({"synthetic", "s1", 1});
    r.add({"synthetic", "fpn", 4});
    return r;
  }();
  return registry;
}

}  // namespace vcmbench
