#include "vcmbench/codec/null_codec.hpp"

#include "vcmbench/codec/bitio.hpp"
#include "vcmbench/error.hpp"

namespace vcmbench {

std::vector<std::uint8_t> NullCodec::encode(std::span<const PlanarFrame> frames,
                                            const CodecParams& params, const StreamInfo&) {
  params.validate();
  Bitstream bs;
  bs.header.magic = kNullMagic;
  bs.header.geometry = common_geometry(frames);
  bs.header.frame_count = static_cast<std::uint32_t>(frames.size());
  bs.header.params = params;
  for (const auto& f : frames) {
    BitWriter w;
    for (const auto& plane : f.planes) {
      for (Sample s : plane) w.put_bits(s, f.bit_depth);
    }
    bs.payloads.push_back(w.finish());
  }
  return bs.serialize();
}

std::vector<PlanarFrame> NullCodec::decode(std::span<const std::uint8_t> stream,
                                           const StreamInfo&) {
  const Bitstream bs = Bitstream::parse(stream, kNullMagic);
  const auto& g = bs.header.geometry;
  std::vector<PlanarFrame> frames;
  for (std::size_t i = 0; i < bs.payloads.size(); ++i) {
    PlanarFrame f = PlanarFrame::make(g.width, g.height, g.bit_depth, g.chroma);
    const std::size_t expected = (f.sample_count() * g.bit_depth + 7) / 8;
    if (bs.payloads[i].size() != expected) {
      fail(ErrorKind::kCorruption, "null payload " + std::to_string(i) + " has " +
                                       std::to_string(bs.payloads[i].size()) +
                                       " bytes, expected " + std::to_string(expected));
    }
    BitReader r(bs.payloads[i]);
    for (auto& plane : f.planes) {
      for (auto& s : plane) s = static_cast<Sample>(r.get_bits(g.bit_depth));
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

std::optional<std::vector<std::uint64_t>> NullCodec::frame_bits(
    std::span<const std::uint8_t> stream) const {
  return Bitstream::parse(stream, kNullMagic).frame_bits();
}

}  // namespace vcmbench
