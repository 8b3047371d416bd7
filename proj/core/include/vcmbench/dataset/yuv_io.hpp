#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vcmbench/dataset/frame.hpp"

namespace vcmbench {

struct FrameGeometry {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  Chroma chroma = Chroma::kYuv420;

  static FrameGeometry of(const PlanarFrame& f) {
    return {f.width, f.height, f.bit_depth, f.chroma};
  }
  friend bool operator==(const FrameGeometry&, const FrameGeometry&) = default;
};

// Bytes occupied by one raw planar frame; 10-bit samples take two bytes.
std::size_t raw_frame_bytes(const FrameGeometry& geometry);

// Reads one 4:2:0 frame (Y, U, V planes) from the front of `bytes`.
// Throws kTruncation when the buffer is shorter than one frame.
PlanarFrame read_yuv420_frame(std::span<const std::uint8_t> bytes, int width,
                              int height, int bit_depth);

// Any chroma layout; same wire rules as read_yuv420_frame.
PlanarFrame read_raw_frame(std::span<const std::uint8_t> bytes,
                           const FrameGeometry& geometry);

// Whole-sequence reader; trailing partial frames are a truncation error.
std::vector<PlanarFrame> read_raw_sequence(std::span<const std::uint8_t> bytes,
                                           const FrameGeometry& geometry);

void append_raw_frame(const PlanarFrame& frame, std::vector<std::uint8_t>& out);
std::vector<std::uint8_t> write_raw_frame(const PlanarFrame& frame);
std::vector<std::uint8_t> write_raw_sequence(std::span<const PlanarFrame> frames);

}  // namespace vcmbench
