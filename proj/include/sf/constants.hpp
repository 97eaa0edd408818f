#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sf/types.hpp"

namespace sf {

inline constexpr std::size_t kRounds = 5;

using Sbox = std::array<std::uint8_t, 16>;

/// 4x4 matrix over GF(2), row-major. Acts on a nibble viewed as a column
/// vector whose first entry is the nibble's most significant bit.
using BitMatrix4 = std::array<std::array<std::uint8_t, 4>, 4>;

/// Full table set for one variant. Immutable once loaded.
struct CipherConstants {
  std::string version;
  Variant variant = Variant::kSF64;
  std::vector<Sbox> sboxes;
  std::vector<std::uint16_t> p_table;  // bit permutation over block_bits
  std::vector<std::uint16_t> t_table;  // nibble permutation over block_bits / 4
  BitMatrix4 fm{};
  std::vector<unsigned> ls_amounts;  // one per key-expansion stage
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the table invariants: bijective S-boxes and permutations, an
/// invertible fm, and in-range rotation amounts. Never throws.
ValidationReport validate_constants(const CipherConstants& constants);

/// GF(2) determinant of a 4x4 bit matrix (0 or 1).
int gf2_determinant(const BitMatrix4& m);

/// Constant sets for all three variants sharing one version string.
class ConstantSet {
 public:
  explicit ConstantSet(std::array<CipherConstants, 3> per_variant);

  const CipherConstants& get(Variant v) const;
  const std::string& version() const noexcept { return per_variant_[0].version; }

  /// Validates every variant; violations are prefixed with the variant name.
  ValidationReport validate() const;

  /// Key-value text layout, see data/sf_constants_v1.txt.
  static ConstantSet parse(std::string_view text);
  static ConstantSet load(const std::filesystem::path& path);
  std::string serialize() const;

 private:
  std::array<CipherConstants, 3> per_variant_;
};

/// The built-in "sf-const-v1" set. Identical to data/sf_constants_v1.txt.
const ConstantSet& canonical_constants();

/// FNV-1a over the version string; stored in ciphertext blob headers.
std::uint64_t version_hash(std::string_view version);

}  // namespace sf
