#pragma once

#include <span>
#include <string>
#include <vector>

#include "vcmbench/bridge/backend.hpp"
#include "vcmbench/dataset/frame.hpp"
#include "vcmbench/packing/tensor.hpp"

namespace vcmbench {

inline constexpr double kSyntheticThreshold = 0.45;
inline constexpr int kSyntheticStride = 4;
inline constexpr int kSyntheticMinComponent = 2;
inline constexpr int kSyntheticFpnLevels = 4;

// Luma in [0, 1], row-major.
struct LumaImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;
};

LumaImage luma_of(const RgbImage& image);

// One (4, ceil(H/4), ceil(W/4)) tensor. The input is padded to a multiple
// of 4 by edge replication. Channels:
//   0  4x4 box mean of luma
//   1  horizontal forward difference of channel 0 (0 in the last column)
//   2  vertical forward difference of channel 0 (0 in the last row)
//   3  channel 0 minus its edge-replicated 3x3 box mean
FeatureTensor synthetic_features(const LumaImage& luma);

// tag "s1": the single feature tensor.
// tag "fpn": four levels, each a 2x2 average pool of the previous one.
// Throws BackendError("unknown_split") for anything else.
FeatureTensorSet synthetic_part1(const LumaImage& luma, const std::string& split_tag);

// Thresholds channel 0 of the first tensor at 0.45, labels 4-connected
// components (raster discovery order), drops components under 2 samples,
// and scales each bounding box by 4 into image coordinates. Score is the
// mean channel-0 value inside the box, clipped to [0, 1].
std::vector<Detection> synthetic_part2(const FeatureTensorSet& set,
                                       const std::string& split_tag, int image_width,
                                       int image_height);

BackendCapabilities synthetic_capabilities();

}  // namespace vcmbench
