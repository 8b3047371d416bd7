#pragma once

#include <optional>
#include <string>

#include "vcmbench/codec/codec.hpp"

namespace vcmbench {

// Command templates understand {input}, {output}, {qp}, {width}, {height},
// {fps}, {frames}, {bitdepth}. Both directions exchange raw planar files.
struct ExternalCodecConfig {
  std::string encode_cmd;
  std::string decode_cmd;
  std::optional<Chroma> input_format;  // when set, frames must match it

  void validate() const;
};

// Wraps an arbitrary command line codec. Each encode/decode call runs in
// its own temporary directory.
class ExternalCodec final : public Codec {
 public:
  explicit ExternalCodec(ExternalCodecConfig config);

  std::string name() const override { return "external"; }

  std::vector<std::uint8_t> encode(std::span<const PlanarFrame> frames,
                                   const CodecParams& params,
                                   const StreamInfo& info) override;

  std::vector<PlanarFrame> decode(std::span<const std::uint8_t> stream,
                                  const StreamInfo& info) override;

  std::string render(const std::string& templ, const std::string& input,
                     const std::string& output, const CodecParams& params,
                     const StreamInfo& info) const;

  const ExternalCodecConfig& config() const { return config_; }

 private:
  ExternalCodecConfig config_;
};

}  // namespace vcmbench
