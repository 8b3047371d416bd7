#include "vcmbench/codec/bitio.hpp"

#include <bit>

#include "vcmbench/error.hpp"

namespace vcmbench {

void BitWriter::put_bit(bool bit) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
  ++bits_;
}

void BitWriter::put_bits(std::uint32_t value, int count) {
  for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1u);
}

void BitWriter::put_ue(std::uint32_t m) {
  const std::uint64_t v = static_cast<std::uint64_t>(m) + 1;
  const int len = 64 - std::countl_zero(v);
  for (int i = 0; i < len - 1; ++i) put_bit(false);
  for (int i = len - 1; i >= 0; --i) put_bit((v >> i) & 1u);
}

std::vector<std::uint8_t> BitWriter::finish() {
  bits_ = 0;
  return std::move(bytes_);
}

bool BitReader::get_bit() {
  if (pos_ >= bytes_.size() * 8) {
    fail(ErrorKind::kCorruption, "bitstream exhausted after " + std::to_string(pos_) + " bits");
  }
  const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
  ++pos_;
  return bit;
}

std::uint32_t BitReader::get_bits(int count) {
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
  return v;
}

std::uint32_t BitReader::get_ue() {
  int zeros = 0;
  while (!get_bit()) {
    if (++zeros > kMaxExpGolombPrefix) {
      fail(ErrorKind::kCorruption, "exp-Golomb prefix longer than 31 zeros");
    }
  }
  std::uint64_t v = 1;
  for (int i = 0; i < zeros; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
  return static_cast<std::uint32_t>(v - 1);
}

std::uint32_t signed_to_code(std::int32_t q) {
  return q > 0 ? static_cast<std::uint32_t>(2 * static_cast<std::int64_t>(q) - 1)
               : static_cast<std::uint32_t>(-2 * static_cast<std::int64_t>(q));
}

std::int32_t code_to_signed(std::uint32_t m) {
  return (m & 1u) ? static_cast<std::int32_t>((m + 1) / 2)
                  : -static_cast<std::int32_t>(m / 2);
}

std::string exp_golomb_string(std::uint32_t m) {
  BitWriter w;
  w.put_ue(m);
  const std::size_t n = w.bit_count();
  const auto bytes = w.finish();
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(((bytes[i / 8] >> (7 - i % 8)) & 1u) ? '1' : '0');
  }
  return out;
}

}  // namespace vcmbench
