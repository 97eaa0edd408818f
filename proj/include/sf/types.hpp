#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "sf/error.hpp"
#include "sf/hex.hpp"

namespace sf {

/// The three widths of the cipher family. Key width always equals block width.
enum class Variant : std::uint8_t { kSF64 = 1, kSF128 = 2, kSF192 = 3 };

inline constexpr std::array<Variant, 3> kAllVariants = {Variant::kSF64, Variant::kSF128,
                                                        Variant::kSF192};

inline constexpr std::size_t kMaxBlockBytes = 24;

constexpr std::size_t block_bits(Variant v) {
  switch (v) {
    case Variant::kSF64: return 64;
    case Variant::kSF128: return 128;
    case Variant::kSF192: return 192;
  }
  return 0;
}

constexpr std::size_t block_bytes(Variant v) { return block_bits(v) / 8; }
constexpr std::size_t key_bits(Variant v) { return block_bits(v); }

/// "SF64", "SF128", "SF192".
std::string_view variant_name(Variant v);

/// Accepts "sf64", "SF64", "64" and friends.
Variant parse_variant(std::string_view text);

/// Fixed-width bit string tied to a variant. Bit 0 is the most significant bit
/// of the first byte, matching how hex strings read left to right.
template <class Tag>
class Word {
 public:
  explicit Word(Variant variant) : variant_(variant) {}

  Word(Variant variant, std::span<const std::uint8_t> bytes) : variant_(variant) {
    if (bytes.size() != block_bytes(variant)) {
      throw Error(ErrorCode::kWidthMismatch,
                  std::string(variant_name(variant)) + " needs " +
                      std::to_string(block_bits(variant)) + " bits, got " +
                      std::to_string(bytes.size() * 8));
    }
    std::copy(bytes.begin(), bytes.end(), bytes_.begin());
  }

  static Word from_hex(Variant variant, std::string_view hex) {
    const auto bytes = parse_hex(hex, block_bits(variant));
    return Word(variant, bytes);
  }

  Variant variant() const noexcept { return variant_; }
  std::size_t bits() const noexcept { return block_bits(variant_); }

  std::span<const std::uint8_t> bytes() const noexcept {
    return {bytes_.data(), block_bytes(variant_)};
  }
  std::span<std::uint8_t> bytes() noexcept { return {bytes_.data(), block_bytes(variant_)}; }

  bool bit(std::size_t index) const {
    check_index(index);
    return (bytes_[index / 8] >> (7 - index % 8)) & 1U;
  }

  void flip_bit(std::size_t index) {
    check_index(index);
    bytes_[index / 8] ^= static_cast<std::uint8_t>(0x80U >> (index % 8));
  }

  Word with_bit_flipped(std::size_t index) const {
    Word copy = *this;
    copy.flip_bit(index);
    return copy;
  }

  std::string hex() const { return to_hex(bytes()); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.variant_ == b.variant_ && std::ranges::equal(a.bytes(), b.bytes());
  }

 private:
  void check_index(std::size_t index) const {
    if (index >= bits()) {
      throw Error(ErrorCode::kOutOfRange, "bit index " + std::to_string(index) +
                                              " outside " + std::to_string(bits()) +
                                              "-bit word");
    }
  }

  Variant variant_;
  std::array<std::uint8_t, kMaxBlockBytes> bytes_{};
};

using Block = Word<struct BlockTag>;
using CipherKey = Word<struct KeyTag>;

}  // namespace sf
