#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcmbench/box.hpp"

namespace vcmbench {

struct GroundTruthObject {
  std::string item_id;
  std::string category;
  Box box;
  std::optional<int> track_id;
  std::optional<int> frame_index;

  friend bool operator==(const GroundTruthObject&, const GroundTruthObject&) = default;
};

struct CocoImage {
  long long id = 0;
  std::string item_id;  // file_name without extension, or the numeric id
  std::string file_name;
  int width = 0;
  int height = 0;
};

struct CocoDocument {
  std::vector<CocoImage> images;  // ordered by image id
  std::vector<GroundTruthObject> objects;
};

// COCO subset: images / annotations / categories. Boxes are converted from
// [x, y, w, h] to corners. Objects come out ordered by (image id,
// annotation id). Throws kParse for malformed JSON and kValidation for
// dangling ids or degenerate boxes.
CocoDocument parse_coco(std::string_view json_text);
std::vector<GroundTruthObject> parse_coco_annotations(std::string_view json_text);

std::string write_coco(const std::vector<CocoImage>& images,
                       const std::vector<GroundTruthObject>& objects);

// Track ground truth CSV: "frame,track_id,x,y,w,h" with an optional header
// row. Frames are 0-based; item ids come from frame_item_id().
std::vector<GroundTruthObject> parse_track_csv(std::string_view csv_text,
                                               std::string_view category = "object");
std::string write_track_csv(const std::vector<GroundTruthObject>& objects);

std::string frame_item_id(int frame_index);

}  // namespace vcmbench
