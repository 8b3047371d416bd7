#include "vcmbench/dataset/dataset.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vcmbench/dataset/color.hpp"
#include "vcmbench/dataset/image_io.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"

namespace vcmbench {

bool DatasetHandle::is_tracking() const {
  return !ground_truth.empty() &&
         std::all_of(ground_truth.begin(), ground_truth.end(),
                     [](const GroundTruthObject& g) { return g.track_id.has_value(); });
}

void DatasetHandle::validate() const {
  if (kind == DatasetKind::kVideoSequence && !(frame_rate > 0.0)) {
    fail(ErrorKind::kValidation, "video dataset needs frame_rate > 0");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0 && !(items[i - 1].id < items[i].id)) {
      fail(ErrorKind::kValidation, "dataset items are not in strict lexicographic order at " +
                                       items[i].id);
    }
    ids.insert(items[i].id);
  }
  for (const auto& g : ground_truth) {
    if (!ids.count(g.item_id)) {
      fail(ErrorKind::kValidation, "ground truth references unknown item " + g.item_id);
    }
    if (!g.box.well_ordered()) {
      fail(ErrorKind::kValidation, "ground truth box for " + g.item_id + " is not well ordered");
    }
  }
}

LoadedDataset load_image_set(const std::filesystem::path& root,
                             const std::filesystem::path& annotations) {
  const CocoDocument doc = parse_coco(read_file_text(annotations));
  std::vector<std::pair<DatasetItem, PlanarFrame>> loaded;
  for (const auto& im : doc.images) {
    if (im.file_name.empty()) {
      fail(ErrorKind::kValidation, "image " + std::to_string(im.id) + " has no file_name");
    }
    const auto path = root / im.file_name;
    PlanarFrame frame;
    if (path.extension() == ".yuv") {
      if (im.width < 1 || im.height < 1) {
        fail(ErrorKind::kValidation, "raw image " + im.file_name + " needs width/height");
      }
      frame = read_yuv420_frame(read_file_bytes(path), im.width, im.height, 8);
    } else {
      frame = rgb_to_yuv420(read_image(path), 8);
    }
    loaded.push_back({DatasetItem{im.item_id, frame.width, frame.height}, std::move(frame)});
  }
  std::sort(loaded.begin(), loaded.end(),
            [](const auto& a, const auto& b) { return a.first.id < b.first.id; });
  LoadedDataset out;
  out.handle.kind = DatasetKind::kImageSet;
  out.handle.ground_truth = doc.objects;
  for (auto& [item, frame] : loaded) {
    out.handle.items.push_back(item);
    out.frames.push_back(std::move(frame));
  }
  out.handle.validate();
  return out;
}

LoadedDataset load_video_sequence(const std::filesystem::path& yuv_path,
                                  const FrameGeometry& geometry,
                                  double frame_rate,
                                  const std::filesystem::path& tracks_csv) {
  LoadedDataset out;
  out.frames = read_raw_sequence(read_file_bytes(yuv_path), geometry);
  out.handle.kind = DatasetKind::kVideoSequence;
  out.handle.frame_rate = frame_rate;
  for (std::size_t i = 0; i < out.frames.size(); ++i) {
    out.handle.items.push_back(
        {frame_item_id(static_cast<int>(i)), geometry.width, geometry.height});
  }
  out.handle.ground_truth = parse_track_csv(read_file_text(tracks_csv));
  out.handle.validate();
  return out;
}

}  // namespace vcmbench
