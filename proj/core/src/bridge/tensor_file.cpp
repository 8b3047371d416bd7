#include "vcmbench/bridge/tensor_file.hpp"

#include <cstring>

#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"

namespace vcmbench {

std::vector<std::uint8_t> encode_tensor_file(const FeatureTensorSet& set) {
  set.validate();
  ByteWriter w;
  w.tag("FTEN");
  w.u8(kTensorFileVersion);
  w.u16(static_cast<std::uint16_t>(set.tensors.size()));
  for (const auto& t : set.tensors) {
    w.u8(3);
    w.u32(static_cast<std::uint32_t>(t.shape.channels));
    w.u32(static_cast<std::uint32_t>(t.shape.height));
    w.u32(static_cast<std::uint32_t>(t.shape.width));
    w.u8(kTensorDtypeF32);
  }
  for (const auto& t : set.tensors) {
    for (float v : t.values) w.f32(v);
  }
  return w.take();
}

FeatureTensorSet decode_tensor_file(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "tensor file");
  if (r.tag() != "FTEN") fail(ErrorKind::kFormat, "tensor file: bad magic");
  if (const auto v = r.u8(); v != kTensorFileVersion) {
    fail(ErrorKind::kFormat, "tensor file: unsupported version " + std::to_string(v));
  }
  const int count = r.u16();
  FeatureTensorSet set;
  std::size_t total = 0;
  for (int i = 0; i < count; ++i) {
    if (r.u8() != 3) fail(ErrorKind::kFormat, "tensor file: only 3-d tensors are supported");
    TensorShape s;
    s.channels = static_cast<int>(r.u32());
    s.height = static_cast<int>(r.u32());
    s.width = static_cast<int>(r.u32());
    if (r.u8() != kTensorDtypeF32) fail(ErrorKind::kFormat, "tensor file: dtype must be f32");
    if (s.channels < 1 || s.height < 1 || s.width < 1 || s.size() > (std::size_t{1} << 30)) {
      fail(ErrorKind::kCorruption, "tensor file: tensor " + std::to_string(i) +
                                       " has invalid dimensions");
    }
    total += s.size();
    set.tensors.push_back({s, {}});
  }
  if (r.remaining() != total * 4) {
    fail(ErrorKind::kCorruption, "tensor file payload is " + std::to_string(r.remaining()) +
                                     " bytes, expected " + std::to_string(total * 4));
  }
  for (auto& t : set.tensors) {
    t.values.resize(t.shape.size());
    for (auto& v : t.values) v = r.f32();
  }
  return set;
}

void write_tensor_file(const std::filesystem::path& path, const FeatureTensorSet& set) {
  write_file_bytes(path, encode_tensor_file(set));
}

FeatureTensorSet read_tensor_file(const std::filesystem::path& path) {
  return decode_tensor_file(read_file_bytes(path));
}

}  // namespace vcmbench
