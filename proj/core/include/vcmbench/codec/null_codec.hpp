#pragma once

#include "vcmbench/codec/bitstream.hpp"
#include "vcmbench/codec/codec.hpp"

namespace vcmbench {

// Lossless passthrough: the FCEB header layout under magic "FCEN", with
// every sample stored verbatim in bit_depth bits (MSB first, all planes,
// each payload byte aligned). Serves as the uncompressed benchmark.
class NullCodec final : public Codec {
 public:
  std::string name() const override { return "null"; }

  std::vector<std::uint8_t> encode(std::span<const PlanarFrame> frames,
                                   const CodecParams& params,
                                   const StreamInfo& info) override;

  std::vector<PlanarFrame> decode(std::span<const std::uint8_t> stream,
                                  const StreamInfo& info) override;

  std::optional<std::vector<std::uint64_t>> frame_bits(
      std::span<const std::uint8_t> stream) const override;
};

}  // namespace vcmbench
