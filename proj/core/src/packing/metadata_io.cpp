#include <string>

#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"
#include "vcmbench/packing/packing.hpp"

namespace vcmbench {

std::vector<std::uint8_t> serialize_metadata(const PackingMetadata& metadata) {
  metadata.validate();
  ByteWriter w;
  w.tag("FPMD");
  w.u8(kMetadataVersion);
  w.u8(static_cast<std::uint8_t>(metadata.bit_depth));
  w.u16(static_cast<std::uint16_t>(metadata.tensors.size()));
  for (const auto& t : metadata.tensors) {
    w.u32(static_cast<std::uint32_t>(t.shape.channels));
    w.u32(static_cast<std::uint32_t>(t.shape.height));
    w.u32(static_cast<std::uint32_t>(t.shape.width));
    w.u32(static_cast<std::uint32_t>(t.grid.cols));
    w.u32(static_cast<std::uint32_t>(t.grid.rows));
    w.u32(static_cast<std::uint32_t>(t.y_offset));
  }
  w.f32(metadata.global_min);
  w.f32(metadata.global_max);
  return w.take();
}

PackingMetadata parse_metadata(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "packing metadata");
  if (r.tag() != "FPMD") fail(ErrorKind::kFormat, "packing metadata: bad magic");
  if (const auto v = r.u8(); v != kMetadataVersion) {
    fail(ErrorKind::kFormat, "packing metadata: unsupported version " + std::to_string(v));
  }
  PackingMetadata m;
  m.bit_depth = r.u8();
  const int count = r.u16();
  constexpr std::uint32_t kLimit = 1u << 20;
  for (int i = 0; i < count; ++i) {
    std::uint32_t f[6];
    for (auto& v : f) {
      v = r.u32();
      if (v > kLimit) fail(ErrorKind::kCorruption, "packing metadata: field out of range");
    }
    TensorPlacement t;
    t.shape = {static_cast<int>(f[0]), static_cast<int>(f[1]), static_cast<int>(f[2])};
    t.grid = {static_cast<int>(f[3]), static_cast<int>(f[4])};
    t.y_offset = static_cast<int>(f[5]);
    m.frame_height = std::max(m.frame_height, t.y_offset + t.grid.rows * t.shape.height);
    m.frame_width = std::max(m.frame_width, t.grid.cols * t.shape.width);
    m.tensors.push_back(t);
  }
  m.global_min = r.f32();
  m.global_max = r.f32();
  if (r.remaining() != 0) fail(ErrorKind::kCorruption, "packing metadata: trailing bytes");
  m.validate();
  return m;
}

}  // namespace vcmbench
