#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vcmbench/dataset/frame.hpp"

namespace vcmbench {

// Binary netpbm with maxval 255. P5 (gray) decodes to R = G = B.
RgbImage decode_netpbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);
std::vector<std::uint8_t> encode_pgm(int width, int height,
                                     std::span<const std::uint8_t> gray);

RgbImage read_image(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

// Model input for a decoded frame: yuv_420 goes through yuv_to_rgb and is
// written as PPM; mono_400 luma is written as PGM (10-bit scaled to 8).
void write_model_input(const std::filesystem::path& path,
                       const PlanarFrame& frame);

}  // namespace vcmbench
