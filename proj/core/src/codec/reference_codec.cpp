#include "vcmbench/codec/reference_codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vcmbench/codec/bitio.hpp"
#include "vcmbench/error.hpp"

namespace vcmbench {

namespace {

Sample reconstruct(std::int32_t pred, std::int32_t q, double step, Sample max_value) {
  const double v = std::round(static_cast<double>(pred) + static_cast<double>(q) * step);
  return static_cast<Sample>(std::clamp(v, 0.0, static_cast<double>(max_value)));
}

Sample predict(const std::vector<Sample>& rec, const std::vector<Sample>* previous,
               int x, int y, int w, Sample mid) {
  const std::size_t i = static_cast<std::size_t>(y) * w + x;
  if (previous) return (*previous)[i];
  if (x > 0) return rec[i - 1];
  if (y > 0) return rec[i - w];
  return mid;
}

// Runs the coding loop for one frame. With a writer it encodes `source`;
// with a reader it decodes into the returned reconstruction.
PlanarFrame code_frame(const FrameGeometry& g, const PlanarFrame* source,
                       const PlanarFrame* previous, double step, BitWriter* writer,
                       BitReader* reader) {
  PlanarFrame rec = PlanarFrame::make(g.width, g.height, g.bit_depth, g.chroma);
  const Sample mid = static_cast<Sample>(1u << (g.bit_depth - 1));
  const Sample hi = rec.max_value();
  for (int p = 0; p < rec.num_planes(); ++p) {
    const int w = rec.plane_width(p);
    const int h = rec.plane_height(p);
    auto& out = rec.planes[p];
    const std::vector<Sample>* prev_plane = previous ? &previous->planes[p] : nullptr;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const std::int32_t pred = predict(out, prev_plane, x, y, w, mid);
        std::int32_t q = 0;
        if (writer) {
          q = quantize_residual(static_cast<std::int32_t>(source->planes[p][i]) - pred, step);
          writer->put_ue(signed_to_code(q));
        } else {
          q = code_to_signed(reader->get_ue());
        }
        out[i] = reconstruct(pred, q, step, hi);
      }
    }
  }
  return rec;
}

}  // namespace

std::int32_t quantize_residual(std::int32_t residual, double step) {
  const double mag = std::floor(std::abs(static_cast<double>(residual)) / step + 0.5);
  const auto q = static_cast<std::int32_t>(mag);
  return residual < 0 ? -q : q;
}

Bitstream ReferenceCodec::encode_bitstream(std::span<const PlanarFrame> frames,
                                           const CodecParams& params) const {
  params.validate();
  const FrameGeometry g = common_geometry(frames);
  const double step = qp_to_step(params.qp);

  Bitstream bs;
  bs.header.magic = kReferenceMagic;
  bs.header.geometry = g;
  bs.header.frame_count = static_cast<std::uint32_t>(frames.size());
  bs.header.params = params;

  PlanarFrame previous;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const bool intra = params.is_intra_frame(static_cast<int>(i));
    BitWriter writer;
    previous = code_frame(g, &frames[i], intra ? nullptr : &previous, step, &writer, nullptr);
    bs.payloads.push_back(writer.finish());
  }
  return bs;
}

std::vector<PlanarFrame> ReferenceCodec::decode_bitstream(const Bitstream& bs) const {
  const auto& h = bs.header;
  const double step = qp_to_step(h.params.qp);
  std::vector<PlanarFrame> frames;
  frames.reserve(bs.payloads.size());
  for (std::size_t i = 0; i < bs.payloads.size(); ++i) {
    const bool intra = h.params.is_intra_frame(static_cast<int>(i));
    BitReader reader(bs.payloads[i]);
    try {
      frames.push_back(code_frame(h.geometry, nullptr, intra ? nullptr : &frames.back(), step,
                                  nullptr, &reader));
    } catch (const Error& e) {
      fail(ErrorKind::kCorruption, "frame " + std::to_string(i) + ": " + e.what());
    }
    if (bs.payloads[i].size() != (reader.bits_consumed() + 7) / 8) {
      fail(ErrorKind::kCorruption,
           "frame " + std::to_string(i) + " payload has trailing bytes");
    }
  }
  return frames;
}

std::vector<std::uint8_t> ReferenceCodec::encode(std::span<const PlanarFrame> frames,
                                                 const CodecParams& params,
                                                 const StreamInfo&) {
  return encode_bitstream(frames, params).serialize();
}

std::vector<PlanarFrame> ReferenceCodec::decode(std::span<const std::uint8_t> stream,
                                                const StreamInfo&) {
  return decode_bitstream(Bitstream::parse(stream, kReferenceMagic));
}

std::optional<std::vector<std::uint64_t>> ReferenceCodec::frame_bits(
    std::span<const std::uint8_t> stream) const {
  return Bitstream::parse(stream, kReferenceMagic).frame_bits();
}

}  // namespace vcmbench
