#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sf/cipher.hpp"
#include "sf/imagio.hpp"

namespace sf {

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
std::size_t hamming_distance(const Block& a, const Block& b);

enum class FlipTarget { kKey, kPlaintext };

std::string_view to_string(FlipTarget target);

/// One single-bit-flip experiment.
struct AvalancheTrial {
  std::string key_hex;
  std::string plaintext_hex;
  FlipTarget flip_target = FlipTarget::kKey;
  std::size_t bit_index = 0;
  Block ciphertext_a{Variant::kSF64};
  Block ciphertext_b{Variant::kSF64};
  double ratio = 0.0;  // hamming(a, b) / block_bits
  std::optional<double> printed_ratio;
};

struct AvalancheReport {
  Variant variant = Variant::kSF64;
  std::vector<AvalancheTrial> trials;
  double mean_ratio = 0.0;
  std::size_t trial_count = 0;
  std::uint64_t rng_seed = 0;
  std::string constant_version;
};

/// Encrypts one block under a fresh key. The cipher path uses key expansion
/// followed by encrypt_block; tests substitute reference permutations.
using BlockEncryptor = std::function<Block(const CipherKey&, const Block&)>;

BlockEncryptor cipher_encryptor(const CipherConstants& constants);

AvalancheTrial avalanche_trial(const CipherKey& key, const Block& plaintext, FlipTarget target,
                               std::size_t bit_index, const BlockEncryptor& encryptor);
AvalancheTrial avalanche_trial(const CipherKey& key, const Block& plaintext, FlipTarget target,
                               std::size_t bit_index, const CipherConstants& constants);

struct TrialSpecEntry {
  std::string key_hex;
  std::string plaintext_hex;
  FlipTarget flip_target = FlipTarget::kKey;
  std::size_t bit_index = 0;
  std::optional<double> printed_ratio;
  std::string note;
};

/// Either an explicit list of trials or a number of seeded random ones
/// (random key, random plaintext, random bit; key and plaintext flips
/// alternate starting with the key).
struct TrialSpec {
  std::vector<TrialSpecEntry> entries;
  std::size_t random_trials = 0;

  static TrialSpec random(std::size_t count) { return {{}, count}; }
  static TrialSpec listed(std::vector<TrialSpecEntry> entries) { return {std::move(entries), 0}; }
};

AvalancheReport avalanche_suite(Variant variant, const BlockEncryptor& encryptor,
                                const TrialSpec& spec, std::uint64_t rng_seed);
AvalancheReport avalanche_suite(Variant variant, const CipherConstants& constants,
                                const TrialSpec& spec, std::uint64_t rng_seed);

/// The four-row protocol of the published avalanche tables for this width:
/// two key flips on an all-ones key, two plaintext flips on an all-ones
/// plaintext. Each entry carries the printed ratio for reference.
std::vector<TrialSpecEntry> published_preset(Variant variant);

/// Arithmetic mean; throws kEmptyInput on an empty list.
double mean_ratio(std::span<const double> ratios);

struct SacVerdict {
  bool pass = false;
  double margin = 0.0;  // mean - 0.5
};

SacVerdict sac_verdict(double mean, double tolerance);
SacVerdict sac_verdict(const AvalancheReport& report, double tolerance);

struct Histogram256 {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;
};

Histogram256 histogram(std::span<const std::uint8_t> pixels);
Histogram256 histogram(const GrayImage& image);

/// Shannon entropy in bits, -sum p log2 p over occupied bins.
double entropy(const Histogram256& hist);

/// (encrypted - original) / original * 100.
double percent_change(double original, double encrypted);

/// Pearson chi-square of the histogram against the uniform distribution.
double chi_square_uniform(const Histogram256& hist);

struct EntropyReport {
  double entropy_original = 0.0;
  double entropy_encrypted = 0.0;
  double percent_change = 0.0;
};

EntropyReport entropy_report(const Histogram256& original, const Histogram256& encrypted);

/// Correctly rounded decimal value at `decimals` places, as the tables print.
double round_to(double value, int decimals);

}  // namespace sf
