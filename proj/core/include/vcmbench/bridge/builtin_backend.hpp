#pragma once

#include "vcmbench/bridge/backend.hpp"

namespace vcmbench {

// In-process synthetic model reading PPM/PGM inputs and FTEN tensor files.
class SyntheticBackend final : public Backend {
 public:
  BackendCapabilities hello() override;
  std::vector<Detection> infer_full(const std::filesystem::path& image) override;
  std::vector<TensorShape> part1(const std::filesystem::path& image,
                                 const std::string& split_tag,
                                 const std::filesystem::path& out_tensor) override;
  std::vector<Detection> part2(const std::filesystem::path& tensor,
                               const std::string& split_tag, int image_width,
                               int image_height) override;
};

}  // namespace vcmbench
