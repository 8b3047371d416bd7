#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcmbench/dataset/frame.hpp"
#include "vcmbench/dataset/yuv_io.hpp"

namespace vcmbench {

enum class TemporalMode : std::uint8_t { kAllIntra = 0, kLowDelay = 1 };

std::string_view to_string(TemporalMode mode);
TemporalMode parse_temporal_mode(std::string_view text);

inline constexpr int kMaxQp = 63;

struct CodecParams {
  int qp = 28;
  TemporalMode temporal_mode = TemporalMode::kAllIntra;
  int intra_period = 32;  // low_delay only

  void validate() const;
  bool is_intra_frame(int index) const {
    return temporal_mode == TemporalMode::kAllIntra || index % intra_period == 0;
  }
};

// Step size 2^((qp - 4) / 6). The fractional octave comes from a correctly
// rounded table so results do not depend on the platform's pow().
double qp_to_step(int qp);

// Out-of-band stream description. Self-describing codecs ignore it on
// decode; the external adapter needs it to re-read raw output.
struct StreamInfo {
  FrameGeometry geometry;
  int frame_count = 0;
  double fps = 30.0;
  int qp = 0;
};

struct RateRecord {
  std::string item_id;
  std::uint64_t bits = 0;
};

class Codec {
 public:
  virtual ~Codec() = default;

  virtual std::string name() const = 0;

  // Frames must share one geometry.
  virtual std::vector<std::uint8_t> encode(std::span<const PlanarFrame> frames,
                                           const CodecParams& params,
                                           const StreamInfo& info) = 0;

  virtual std::vector<PlanarFrame> decode(std::span<const std::uint8_t> stream,
                                          const StreamInfo& info) = 0;

  // Per-frame share of the stream's bits, when the container exposes it.
  // The shares sum to 8 * stream.size().
  virtual std::optional<std::vector<std::uint64_t>> frame_bits(
      std::span<const std::uint8_t> stream) const {
    (void)stream;
    return std::nullopt;
  }
};

// Checks that all frames are valid and share one geometry (kValidation).
FrameGeometry common_geometry(std::span<const PlanarFrame> frames);

}  // namespace vcmbench
