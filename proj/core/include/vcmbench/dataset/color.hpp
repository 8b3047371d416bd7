#pragma once

#include "vcmbench/dataset/frame.hpp"

namespace vcmbench {

// BT.709 limited-range YCbCr 4:2:0 -> 8-bit RGB. Chroma is upsampled by
// nearest neighbour; 10-bit input is scaled to the 8-bit code range first.
// Throws kUnsupported for mono_400 frames.
RgbImage yuv_to_rgb(const PlanarFrame& frame);

// Inverse direction for ingesting RGB images: BT.709 limited range, chroma
// taken as the rounded mean of each 2x2 block.
PlanarFrame rgb_to_yuv420(const RgbImage& image, int bit_depth = 8);

// Full-range BT.709 luma of one RGB pixel, normalised to [0, 1].
double rgb_luma(const std::uint8_t* rgb);

}  // namespace vcmbench
