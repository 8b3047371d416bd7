#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vcmbench/packing/tensor.hpp"

namespace vcmbench {

// "FTEN" tensor exchange file, little-endian:
//   magic[4] version u8 count u16
//   count x { ndim u8 (=3), dims u32 x 3, dtype u8 (=0, f32) }
//   payload: every tensor's f32 values, channel-major, in order
inline constexpr std::uint8_t kTensorFileVersion = 1;
inline constexpr std::uint8_t kTensorDtypeF32 = 0;

std::vector<std::uint8_t> encode_tensor_file(const FeatureTensorSet& set);
// The split tag is not stored; the result carries an empty tag.
FeatureTensorSet decode_tensor_file(std::span<const std::uint8_t> bytes);

void write_tensor_file(const std::filesystem::path& path, const FeatureTensorSet& set);
FeatureTensorSet read_tensor_file(const std::filesystem::path& path);

}  // namespace vcmbench
