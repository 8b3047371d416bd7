#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vcmbench {

// MSB-first bit packer.
class BitWriter {
 public:
  void put_bit(bool bit);
  void put_bits(std::uint32_t value, int count);
  // Order-0 exp-Golomb: m -> (len-1) zeros followed by binary(m + 1).
  void put_ue(std::uint32_t m);
  // Pads the last byte with zeros and returns the buffer.
  std::vector<std::uint8_t> finish();

  std::size_t bit_count() const { return bits_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

// Throws kCorruption when reading past the end or on a code with more than
// 31 leading zeros.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool get_bit();
  std::uint32_t get_bits(int count);
  std::uint32_t get_ue();

  std::size_t bits_consumed() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline constexpr int kMaxExpGolombPrefix = 31;

// Signed residual <-> unsigned code: q > 0 -> 2q - 1, q <= 0 -> -2q.
std::uint32_t signed_to_code(std::int32_t q);
std::int32_t code_to_signed(std::uint32_t m);

// "0"/"1" rendering of a single exp-Golomb codeword, for diagnostics.
std::string exp_golomb_string(std::uint32_t m);

}  // namespace vcmbench
