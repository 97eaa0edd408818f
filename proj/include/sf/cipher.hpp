#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sf/constants.hpp"
#include "sf/types.hpp"

namespace sf {

/// Five round keys, each as wide as the block, plus the constant-set version
/// they were derived under.
class RoundKeySchedule {
 public:
  RoundKeySchedule(std::string constant_version, std::vector<Block> round_keys);

  Variant variant() const noexcept { return round_keys_.front().variant(); }
  const std::string& constant_version() const noexcept { return constant_version_; }
  std::span<const Block> round_keys() const noexcept { return round_keys_; }

  /// Round key r unpacked to one nibble per byte, hex-digit order.
  std::span<const std::uint8_t> nibbles(std::size_t round) const;

 private:
  std::string constant_version_;
  std::vector<Block> round_keys_;
  std::vector<std::uint8_t> nibbles_;
};

/// Key expansion: per stage, XOR/XNOR mixing of the register halves, left
/// rotation by ls_amounts[stage], fm applied to every nibble, the P-table bit
/// permutation and the T-table nibble transposition. Round key r is the
/// register after stage r.
RoundKeySchedule derive_round_keys(const CipherKey& key, const CipherConstants& constants);

Block encrypt_block(const Block& plaintext, const RoundKeySchedule& schedule,
                    const CipherConstants& constants);
Block decrypt_block(const Block& ciphertext, const RoundKeySchedule& schedule,
                    const CipherConstants& constants);

/// ECB over a whole buffer. `in` must be a multiple of the block size and the
/// same length as `out`; the two may alias.
void encrypt_blocks(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                    const RoundKeySchedule& schedule, const CipherConstants& constants);
void decrypt_blocks(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                    const RoundKeySchedule& schedule, const CipherConstants& constants);

/// Reduced 8-bit instance of the same round skeleton: two one-nibble halves,
/// five rounds, round key byte = (XOR/XNOR nibble << 4) | OR nibble. Small
/// enough to enumerate every input.
namespace toy {

std::uint8_t encrypt(std::uint8_t plaintext, std::span<const std::uint8_t, kRounds> round_keys,
                     std::span<const Sbox> sboxes);
std::uint8_t decrypt(std::uint8_t ciphertext, std::span<const std::uint8_t, kRounds> round_keys,
                     std::span<const Sbox> sboxes);

}  // namespace toy

}  // namespace sf
