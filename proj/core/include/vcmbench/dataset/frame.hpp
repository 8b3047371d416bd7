#pragma once

#include <cstdint>
#include <vector>

namespace vcmbench {

enum class Chroma : std::uint8_t { kMono400 = 0, kYuv420 = 1 };

using Sample = std::uint16_t;

// Planar integer picture. Plane 0 is luma; yuv_420 frames carry two more
// planes of ceil(w/2) x ceil(h/2) samples.
struct PlanarFrame {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  Chroma chroma = Chroma::kYuv420;
  std::vector<std::vector<Sample>> planes;

  static PlanarFrame make(int width, int height, int bit_depth, Chroma chroma,
                          Sample fill = 0);

  int num_planes() const { return chroma == Chroma::kYuv420 ? 3 : 1; }
  int plane_width(int plane) const;
  int plane_height(int plane) const;
  Sample max_value() const { return static_cast<Sample>((1u << bit_depth) - 1); }
  std::size_t sample_count() const;

  // Throws kValidation when any invariant is broken.
  void validate() const;

  bool same_geometry(const PlanarFrame& other) const {
    return width == other.width && height == other.height &&
           bit_depth == other.bit_depth && chroma == other.chroma;
  }

  friend bool operator==(const PlanarFrame&, const PlanarFrame&) = default;
};

// 8-bit RGB, interleaved.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;

  static RgbImage make(int width, int height) {
    RgbImage img;
    img.width = width;
    img.height = height;
    img.samples.assign(static_cast<std::size_t>(width) * height * 3, 0);
    return img;
  }

  std::uint8_t* pixel(int x, int y) {
    return samples.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* pixel(int x, int y) const {
    return samples.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

}  // namespace vcmbench
