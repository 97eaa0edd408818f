#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sf {

/// Parses exactly expected_bits / 4 hex digits (either case). Throws
/// sf::Error with kBadHex naming the offending position on bad input.
std::vector<std::uint8_t> parse_hex(std::string_view text, std::size_t expected_bits);

/// Parses an even-length hex string of any size.
std::vector<std::uint8_t> parse_hex(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace sf
