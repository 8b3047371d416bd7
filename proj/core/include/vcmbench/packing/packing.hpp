#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcmbench/dataset/frame.hpp"
#include "vcmbench/packing/tensor.hpp"

namespace vcmbench {

inline constexpr int kDefaultFeatureBitDepth = 10;

// Below this range the set is treated as constant: every code is 0 and the
// step is 1.
inline constexpr double kDegenerateRange = 1e-12;

// Uniform min-max quantization shared by every tensor in a set.
struct QuantizedSet {
  int bit_depth = kDefaultFeatureBitDepth;
  float global_min = 0.0f;
  float global_max = 0.0f;
  std::vector<std::vector<Sample>> codes;  // one array per tensor

  double step() const;
};

double quantization_step(float global_min, float global_max, int bit_depth);

// Code representing real 0.0, clipped to the code range. Used for padding.
Sample zero_code(float global_min, float global_max, int bit_depth);

QuantizedSet quantize(const FeatureTensorSet& set, int bit_depth);
float dequantize(Sample code, float global_min, float global_max, int bit_depth);

struct GridGeometry {
  int cols = 0;
  int rows = 0;
  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

// Near-square grid: cols = ceil(sqrt(n)), rows = ceil(n / cols).
GridGeometry grid_for(int channels);

// Channel k of a quantized tensor goes to grid cell (k / cols, k % cols).
struct TileGrid {
  GridGeometry grid;
  int cell_height = 0;
  int cell_width = 0;
  std::vector<Sample> samples;  // (rows * cell_height) x (cols * cell_width)

  int height() const { return grid.rows * cell_height; }
  int width() const { return grid.cols * cell_width; }
};

TileGrid tile(const TensorShape& shape, std::span<const Sample> codes, Sample pad);

// Inverse of tile(); padding cells are dropped.
std::vector<Sample> untile(const TensorShape& shape, std::span<const Sample> frame,
                           int frame_width, int y_offset);

struct TensorPlacement {
  TensorShape shape;
  GridGeometry grid;
  int y_offset = 0;
  friend bool operator==(const TensorPlacement&, const TensorPlacement&) = default;
};

struct PackingMetadata {
  int bit_depth = kDefaultFeatureBitDepth;
  std::vector<TensorPlacement> tensors;
  float global_min = 0.0f;
  float global_max = 0.0f;
  int frame_width = 0;
  int frame_height = 0;

  // Throws kCorruption when placements are inconsistent.
  void validate() const;

  friend bool operator==(const PackingMetadata&, const PackingMetadata&) = default;
};

struct PackedFrameSet {
  PlanarFrame frame;  // mono_400, metadata.bit_depth bits
  PackingMetadata metadata;
};

// Quantize jointly, tile each tensor, and stack the grids top to bottom in
// set order. Narrower grids are right-padded with the zero code.
PackedFrameSet pack(const FeatureTensorSet& set, int bit_depth = kDefaultFeatureBitDepth);

// Structural inverse of pack() followed by dequantization. Throws
// kCorruption when the frame disagrees with the metadata.
FeatureTensorSet unpack(const PlanarFrame& frame, const PackingMetadata& metadata,
                        std::string split_tag = {});
inline FeatureTensorSet unpack(const PackedFrameSet& packed, std::string split_tag = {}) {
  return unpack(packed.frame, packed.metadata, std::move(split_tag));
}

// "FPMD" sidecar: magic, version u8, bit_depth u8, tensor count u16, per
// tensor six u32 (channels, height, width, grid_cols, grid_rows, y_offset),
// then global_min and global_max as f32. Little-endian throughout.
inline constexpr std::uint8_t kMetadataVersion = 1;
std::vector<std::uint8_t> serialize_metadata(const PackingMetadata& metadata);
PackingMetadata parse_metadata(std::span<const std::uint8_t> bytes);

}  // namespace vcmbench
