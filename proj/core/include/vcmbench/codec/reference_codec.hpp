#pragma once

#include "vcmbench/codec/bitstream.hpp"
#include "vcmbench/codec/codec.hpp"

namespace vcmbench {

// Closed-loop DPCM coder with a uniform residual quantizer and order-0
// exp-Golomb codes.
//
// Prediction, per plane in raster order:
//   intra: left reconstructed sample; column 0 uses the sample above;
//          the first sample of a plane uses 2^(bit_depth - 1)
//   inter: co-located reconstructed sample of the previous frame
// Frame i is intra when all_intra, or when i % intra_period == 0.
// Residual r = x - p is quantized to q = sign(r) * floor(|r| / step + 0.5)
// and reconstructed as clip(round(p + q * step)), rounding half away from
// zero. Each frame payload is byte aligned.
class ReferenceCodec final : public Codec {
 public:
  std::string name() const override { return "reference"; }

  std::vector<std::uint8_t> encode(std::span<const PlanarFrame> frames,
                                   const CodecParams& params,
                                   const StreamInfo& info) override;

  std::vector<PlanarFrame> decode(std::span<const std::uint8_t> stream,
                                  const StreamInfo& info) override;

  std::optional<std::vector<std::uint64_t>> frame_bits(
      std::span<const std::uint8_t> stream) const override;

  Bitstream encode_bitstream(std::span<const PlanarFrame> frames,
                             const CodecParams& params) const;
  std::vector<PlanarFrame> decode_bitstream(const Bitstream& bitstream) const;
};

std::int32_t quantize_residual(std::int32_t residual, double step);

}  // namespace vcmbench
