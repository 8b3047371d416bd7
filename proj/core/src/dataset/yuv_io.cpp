#include "vcmbench/dataset/yuv_io.hpp"

#include <string>

#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

int bytes_per_sample(int bit_depth) { return bit_depth > 8 ? 2 : 1; }

void check_geometry(const FrameGeometry& g) {
  if (g.width < 1 || g.height < 1) {
    fail(ErrorKind::kValidation, "raw frame dimensions must be positive");
  }
  if (g.bit_depth != 8 && g.bit_depth != 10) {
    fail(ErrorKind::kValidation,
         "raw frames must be 8 or 10 bit, got " + std::to_string(g.bit_depth));
  }
}

}  // namespace

std::size_t raw_frame_bytes(const FrameGeometry& geometry) {
  const auto probe = PlanarFrame{geometry.width, geometry.height,
                                 geometry.bit_depth, geometry.chroma, {}};
  return probe.sample_count() * bytes_per_sample(geometry.bit_depth);
}

PlanarFrame read_raw_frame(std::span<const std::uint8_t> bytes,
                           const FrameGeometry& geometry) {
  check_geometry(geometry);
  const std::size_t need = raw_frame_bytes(geometry);
  if (bytes.size() < need) {
    fail(ErrorKind::kTruncation,
         "raw frame truncated: expected " + std::to_string(need) +
             " bytes, got " + std::to_string(bytes.size()));
  }
  PlanarFrame f = PlanarFrame::make(geometry.width, geometry.height,
                                    geometry.bit_depth, geometry.chroma);
  const bool wide = geometry.bit_depth > 8;
  std::size_t pos = 0;
  for (auto& plane : f.planes) {
    for (auto& s : plane) {
      if (wide) {
        s = static_cast<Sample>((bytes[pos] | (bytes[pos + 1] << 8)) & 0x3FF);
        pos += 2;
      } else {
        s = bytes[pos++];
      }
    }
  }
  return f;
}

PlanarFrame read_yuv420_frame(std::span<const std::uint8_t> bytes, int width,
                              int height, int bit_depth) {
  return read_raw_frame(bytes, {width, height, bit_depth, Chroma::kYuv420});
}

std::vector<PlanarFrame> read_raw_sequence(std::span<const std::uint8_t> bytes,
                                           const FrameGeometry& geometry) {
  check_geometry(geometry);
  const std::size_t frame_bytes = raw_frame_bytes(geometry);
  if (bytes.size() % frame_bytes != 0) {
    fail(ErrorKind::kTruncation,
         "raw sequence of " + std::to_string(bytes.size()) +
             " bytes is not a whole number of " + std::to_string(frame_bytes) +
             "-byte frames");
  }
  std::vector<PlanarFrame> frames;
  frames.reserve(bytes.size() / frame_bytes);
  for (std::size_t off = 0; off < bytes.size(); off += frame_bytes) {
    frames.push_back(read_raw_frame(bytes.subspan(off, frame_bytes), geometry));
  }
  return frames;
}

void append_raw_frame(const PlanarFrame& frame, std::vector<std::uint8_t>& out) {
  const bool wide = frame.bit_depth > 8;
  for (const auto& plane : frame.planes) {
    for (Sample s : plane) {
      out.push_back(static_cast<std::uint8_t>(s & 0xFF));
      if (wide) out.push_back(static_cast<std::uint8_t>(s >> 8));
    }
  }
}

std::vector<std::uint8_t> write_raw_frame(const PlanarFrame& frame) {
  std::vector<std::uint8_t> out;
  out.reserve(raw_frame_bytes(FrameGeometry::of(frame)));
  append_raw_frame(frame, out);
  return out;
}

std::vector<std::uint8_t> write_raw_sequence(
    std::span<const PlanarFrame> frames) {
  std::vector<std::uint8_t> out;
  for (const auto& f : frames) append_raw_frame(f, out);
  return out;
}

}  // namespace vcmbench
