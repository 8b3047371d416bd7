#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcmbench/codec/codec.hpp"

namespace vcmbench {

inline constexpr char kReferenceMagic[] = "FCEB";
inline constexpr char kNullMagic[] = "FCEN";
inline constexpr std::uint8_t kBitstreamVersion = 1;
inline constexpr std::size_t kBitstreamHeaderBytes = 23;

// Little-endian container header:
//   magic[4] version u8 width u32 height u32 bit_depth u8 chroma u8
//   frame_count u32 qp u8 temporal_mode u8 intra_period u16
// followed by frame_count payloads, each a u32 byte length and the bytes.
struct BitstreamHeader {
  std::string magic = kReferenceMagic;
  std::uint8_t version = kBitstreamVersion;
  FrameGeometry geometry;
  std::uint32_t frame_count = 0;
  CodecParams params;

  friend bool operator==(const BitstreamHeader&, const BitstreamHeader&) = default;
};

struct Bitstream {
  BitstreamHeader header;
  std::vector<std::vector<std::uint8_t>> payloads;

  std::vector<std::uint8_t> serialize() const;

  // kFormat on bad magic/version/header fields, kCorruption on a length
  // prefix that runs past the end or trailing garbage.
  static Bitstream parse(std::span<const std::uint8_t> bytes,
                         std::string_view expected_magic);

  // Header and length prefixes are attributed to the frame they precede;
  // the global header goes to frame 0.
  std::vector<std::uint64_t> frame_bits() const;
};

}  // namespace vcmbench
