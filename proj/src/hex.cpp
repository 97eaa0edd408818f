#include "sf/hex.hpp"

#include <algorithm>

#include "sf/error.hpp"

namespace sf {

namespace {

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::vector<std::uint8_t> parse_hex(std::string_view text) {
  if (text.size() % 2 != 0) {
    throw Error(ErrorCode::kBadHex, "hex string has odd length " + std::to_string(text.size()));
  }
  std::vector<std::uint8_t> out(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int v = digit_value(text[i]);
    if (v < 0) {
      throw Error(ErrorCode::kBadHex, "invalid hex digit '" + std::string(1, text[i]) +
                                         "' at position " + std::to_string(i));
    }
    out[i / 2] = static_cast<std::uint8_t>(out[i / 2] | (i % 2 == 0 ? v << 4 : v));
  }
  return out;
}

std::vector<std::uint8_t> parse_hex(std::string_view text, std::size_t expected_bits) {
  const std::size_t digits = expected_bits / 4;
  if (text.size() != digits) {
    throw Error(ErrorCode::kBadHex, "expected " + std::to_string(digits) + " hex digits (" +
                                       std::to_string(expected_bits) + " bits), got " +
                                       std::to_string(text.size()) + " (position " +
                                       std::to_string(std::min(text.size(), digits)) + ")");
  }
  return parse_hex(text);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

}  // namespace sf
