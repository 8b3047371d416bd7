#include "vcmbench/codec/bitstream.hpp"

#include <array>
#include <cmath>

#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"

namespace vcmbench {

std::string_view to_string(TemporalMode mode) {
  return mode == TemporalMode::kAllIntra ? "all_intra" : "low_delay";
}

TemporalMode parse_temporal_mode(std::string_view text) {
  if (text == "all_intra" || text == "AI") return TemporalMode::kAllIntra;
  if (text == "low_delay" || text == "LD") return TemporalMode::kLowDelay;
  fail(ErrorKind::kValidation, "unknown temporal mode '" + std::string(text) + "'");
}

void CodecParams::validate() const {
  if (qp < 0 || qp > kMaxQp) {
    fail(ErrorKind::kValidation, "qp " + std::to_string(qp) + " outside 0.." +
                                     std::to_string(kMaxQp));
  }
  if (temporal_mode == TemporalMode::kLowDelay && (intra_period < 1 || intra_period > 0xFFFF)) {
    fail(ErrorKind::kValidation, "intra_period must be in 1..65535");
  }
}

double qp_to_step(int qp) {
  if (qp < 0 || qp > kMaxQp) {
    fail(ErrorKind::kValidation, "qp " + std::to_string(qp) + " outside 0.." +
                                     std::to_string(kMaxQp));
  }
  // 2^(k/6), k = 0..5, correctly rounded.
  static constexpr std::array<double, 6> kOctave = {
      0x1.0000000000000p+0, 0x1.1f59ac3c7d6c0p+0, 0x1.428a2f98d728bp+0,
      0x1.6a09e667f3bcdp+0, 0x1.965fea53d6e3dp+0, 0x1.c823e074ec129p+0,
  };
  const int e = qp - 4;
  const int octave = e >= 0 ? e / 6 : -((-e + 5) / 6);
  return std::ldexp(kOctave[static_cast<std::size_t>(e - 6 * octave)], octave);
}

FrameGeometry common_geometry(std::span<const PlanarFrame> frames) {
  if (frames.empty()) fail(ErrorKind::kValidation, "codec needs at least one frame");
  const FrameGeometry g = FrameGeometry::of(frames.front());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames[i].validate();
    if (!(FrameGeometry::of(frames[i]) == g)) {
      fail(ErrorKind::kValidation,
           "frame " + std::to_string(i) + " geometry differs from frame 0");
    }
  }
  return g;
}

std::vector<std::uint8_t> Bitstream::serialize() const {
  ByteWriter w;
  w.tag(header.magic);
  w.u8(header.version);
  w.u32(static_cast<std::uint32_t>(header.geometry.width));
  w.u32(static_cast<std::uint32_t>(header.geometry.height));
  w.u8(static_cast<std::uint8_t>(header.geometry.bit_depth));
  w.u8(static_cast<std::uint8_t>(header.geometry.chroma));
  w.u32(header.frame_count);
  w.u8(static_cast<std::uint8_t>(header.params.qp));
  w.u8(static_cast<std::uint8_t>(header.params.temporal_mode));
  w.u16(static_cast<std::uint16_t>(header.params.intra_period));
  for (const auto& p : payloads) {
    w.u32(static_cast<std::uint32_t>(p.size()));
    w.raw(p);
  }
  return w.take();
}

Bitstream Bitstream::parse(std::span<const std::uint8_t> bytes,
                           std::string_view expected_magic) {
  if (bytes.size() < kBitstreamHeaderBytes) {
    fail(ErrorKind::kFormat, "bitstream shorter than its header");
  }
  ByteReader r(bytes, "bitstream");
  Bitstream bs;
  auto& h = bs.header;
  h.magic = r.tag();
  if (h.magic != expected_magic) {
    fail(ErrorKind::kFormat, "bitstream magic '" + h.magic + "', expected '" +
                                 std::string(expected_magic) + "'");
  }
  h.version = r.u8();
  if (h.version != kBitstreamVersion) {
    fail(ErrorKind::kFormat, "unsupported bitstream version " + std::to_string(h.version));
  }
  h.geometry.width = static_cast<int>(r.u32());
  h.geometry.height = static_cast<int>(r.u32());
  h.geometry.bit_depth = r.u8();
  const auto chroma = r.u8();
  h.frame_count = r.u32();
  h.params.qp = r.u8();
  const auto mode = r.u8();
  h.params.intra_period = r.u16();
  if (chroma > 1 || mode > 1 || (h.geometry.bit_depth != 8 && h.geometry.bit_depth != 10) ||
      h.geometry.width < 1 || h.geometry.height < 1 || h.geometry.width > (1 << 16) ||
      h.geometry.height > (1 << 16) || h.params.qp > kMaxQp) {
    fail(ErrorKind::kFormat, "bitstream header has out-of-range fields");
  }
  h.geometry.chroma = static_cast<Chroma>(chroma);
  h.params.temporal_mode = static_cast<TemporalMode>(mode);
  if (h.params.temporal_mode == TemporalMode::kLowDelay && h.params.intra_period < 1) {
    fail(ErrorKind::kFormat, "bitstream header has zero intra period");
  }
  for (std::uint32_t i = 0; i < h.frame_count; ++i) {
    const std::uint32_t len = r.u32();
    const auto payload = r.raw(len);
    bs.payloads.emplace_back(payload.begin(), payload.end());
  }
  if (r.remaining() != 0) {
    fail(ErrorKind::kCorruption,
         std::to_string(r.remaining()) + " trailing bytes after last frame payload");
  }
  return bs;
}

std::vector<std::uint64_t> Bitstream::frame_bits() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    std::uint64_t bytes = 4 + payloads[i].size();
    if (i == 0) bytes += kBitstreamHeaderBytes;
    out.push_back(8 * bytes);
  }
  return out;
}

}  // namespace vcmbench
