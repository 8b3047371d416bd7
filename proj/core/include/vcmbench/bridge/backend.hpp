#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vcmbench/box.hpp"
#include "vcmbench/bridge/split_registry.hpp"
#include "vcmbench/packing/tensor.hpp"

namespace vcmbench {

inline constexpr int kProtocolVersion = 1;

struct Detection {
  std::string item_id;
  std::string category;
  Box box;
  double score = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

enum class Task { kDetection, kTracking };

std::string_view to_string(Task task);
Task parse_task(std::string_view text);

struct BackendCapabilities {
  std::vector<Task> tasks;
  std::vector<SplitPointSpec> split_tags;
  int protocol_version = kProtocolVersion;

  bool supports(Task task) const;
  const SplitPointSpec* split(std::string_view tag) const;
};

// A vision model that can run whole, or as the two halves of a split.
// Detections come back without item_id; callers attach it.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendCapabilities hello() = 0;

  virtual std::vector<Detection> infer_full(const std::filesystem::path& image) = 0;

  // Writes an FTEN file to `out_tensor` and returns the tensor shapes.
  virtual std::vector<TensorShape> part1(const std::filesystem::path& image,
                                         const std::string& split_tag,
                                         const std::filesystem::path& out_tensor) = 0;

  virtual std::vector<Detection> part2(const std::filesystem::path& tensor,
                                       const std::string& split_tag, int image_width,
                                       int image_height) = 0;

  virtual void shutdown() {}
};

}  // namespace vcmbench
