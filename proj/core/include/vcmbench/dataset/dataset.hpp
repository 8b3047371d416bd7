#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vcmbench/dataset/annotations.hpp"
#include "vcmbench/dataset/frame.hpp"
#include "vcmbench/dataset/yuv_io.hpp"

namespace vcmbench {

enum class DatasetKind { kImageSet, kVideoSequence };

struct DatasetItem {
  std::string id;
  int width = 0;
  int height = 0;
};

struct DatasetHandle {
  DatasetKind kind = DatasetKind::kImageSet;
  std::vector<DatasetItem> items;  // lexicographic by id
  double frame_rate = 0.0;         // video only, > 0
  std::vector<GroundTruthObject> ground_truth;

  bool is_tracking() const;
  void validate() const;
};

// A handle plus one pristine frame per item, in item order.
struct LoadedDataset {
  DatasetHandle handle;
  std::vector<PlanarFrame> frames;
};

// Images listed in a COCO file, resolved relative to `root`. `.ppm`/`.pgm`
// files are converted to 8-bit yuv_420; `.yuv` files are read as 8-bit
// 4:2:0 using the COCO width/height.
LoadedDataset load_image_set(const std::filesystem::path& root,
                             const std::filesystem::path& annotations);

// One raw planar sequence plus a track CSV.
LoadedDataset load_video_sequence(const std::filesystem::path& yuv_path,
                                  const FrameGeometry& geometry,
                                  double frame_rate,
                                  const std::filesystem::path& tracks_csv);

}  // namespace vcmbench
