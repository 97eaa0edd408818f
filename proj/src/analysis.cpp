#include "sf/analysis.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace sf {

namespace {

// Uniform integer in [0, n) from raw mt19937_64 output, so reports are
// identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

template <class W>
W random_word(Variant v, std::mt19937_64& rng) {
  W w(v);
  auto bytes = w.bytes();
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    std::uint64_t x = rng();
    for (std::size_t k = i; k < std::min(i + 8, bytes.size()); ++k, x >>= 8) {
      bytes[k] = static_cast<std::uint8_t>(x);
    }
  }
  return w;
}

}  // namespace

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kWidthMismatch, "hamming distance of " + std::to_string(a.size() * 8) +
                                               "-bit and " + std::to_string(b.size() * 8) +
                                               "-bit values");
  }
  std::size_t bits = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bits += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
  }
  return bits;
}

std::size_t hamming_distance(const Block& a, const Block& b) {
  return hamming_distance(a.bytes(), b.bytes());
}

std::string_view to_string(FlipTarget target) {
  return target == FlipTarget::kKey ? "KEY" : "PLAINTEXT";
}

BlockEncryptor cipher_encryptor(const CipherConstants& constants) {
  return [&constants](const CipherKey& key, const Block& pt) {
    return encrypt_block(pt, derive_round_keys(key, constants), constants);
  };
}

AvalancheTrial avalanche_trial(const CipherKey& key, const Block& plaintext, FlipTarget target,
                               std::size_t bit_index, const BlockEncryptor& encryptor) {
  if (key.variant() != plaintext.variant()) {
    throw Error(ErrorCode::kWidthMismatch, "key and plaintext widths differ");
  }
  const std::size_t width = target == FlipTarget::kKey ? key.bits() : plaintext.bits();
  if (bit_index >= width) {
    throw Error(ErrorCode::kOutOfRange, "bit index " + std::to_string(bit_index) +
                                            " outside the " + std::to_string(width) + "-bit " +
                                            std::string(to_string(target)));
  }
  AvalancheTrial t;
  t.key_hex = key.hex();
  t.plaintext_hex = plaintext.hex();
  t.flip_target = target;
  t.bit_index = bit_index;
  t.ciphertext_a = encryptor(key, plaintext);
  t.ciphertext_b = target == FlipTarget::kKey ? encryptor(key.with_bit_flipped(bit_index), plaintext)
                                              : encryptor(key, plaintext.with_bit_flipped(bit_index));
  t.ratio = static_cast<double>(hamming_distance(t.ciphertext_a, t.ciphertext_b)) /
            static_cast<double>(plaintext.bits());
  return t;
}

AvalancheTrial avalanche_trial(const CipherKey& key, const Block& plaintext, FlipTarget target,
                               std::size_t bit_index, const CipherConstants& constants) {
  return avalanche_trial(key, plaintext, target, bit_index, cipher_encryptor(constants));
}

AvalancheReport avalanche_suite(Variant variant, const BlockEncryptor& encryptor,
                                const TrialSpec& spec, std::uint64_t rng_seed) {
  if (spec.entries.empty() && spec.random_trials == 0) {
    throw Error(ErrorCode::kEmptyInput, "avalanche suite needs at least one trial");
  }
  AvalancheReport report;
  report.variant = variant;
  report.rng_seed = rng_seed;
  report.trials.reserve(spec.entries.size() + spec.random_trials);

  for (const auto& e : spec.entries) {
    auto t = avalanche_trial(CipherKey::from_hex(variant, e.key_hex),
                             Block::from_hex(variant, e.plaintext_hex), e.flip_target, e.bit_index,
                             encryptor);
    t.printed_ratio = e.printed_ratio;
    report.trials.push_back(std::move(t));
  }

  std::mt19937_64 rng(rng_seed);
  for (std::size_t i = 0; i < spec.random_trials; ++i) {
    const auto key = random_word<CipherKey>(variant, rng);
    const auto pt = random_word<Block>(variant, rng);
    const auto bit = static_cast<std::size_t>(uniform_below(rng, block_bits(variant)));
    const FlipTarget target = i % 2 == 0 ? FlipTarget::kKey : FlipTarget::kPlaintext;
    report.trials.push_back(avalanche_trial(key, pt, target, bit, encryptor));
  }

  std::vector<double> ratios;
  ratios.reserve(report.trials.size());
  for (const auto& t : report.trials) ratios.push_back(t.ratio);
  report.mean_ratio = mean_ratio(ratios);
  report.trial_count = report.trials.size();
  return report;
}

AvalancheReport avalanche_suite(Variant variant, const CipherConstants& constants,
                                const TrialSpec& spec, std::uint64_t rng_seed) {
  if (constants.variant != variant) {
    throw Error(ErrorCode::kWidthMismatch, "constants are for " +
                                               std::string(variant_name(constants.variant)) +
                                               ", suite requested " +
                                               std::string(variant_name(variant)));
  }
  auto report = avalanche_suite(variant, cipher_encryptor(constants), spec, rng_seed);
  report.constant_version = constants.version;
  return report;
}

std::vector<TrialSpecEntry> published_preset(Variant variant) {
  const std::size_t digits = block_bits(variant) / 4;
  const std::string ones(digits, 'F');
  const std::string structured = std::string("000A4A6DE8DB6667000A4A6DE8DB6667000A4A6DE8DB6667")
                                     .substr(0, digits);
  const char* recovered = "flip position read from the printed flipped input";
  auto key_row = [&](std::size_t bit, double ratio, std::string note) {
    return TrialSpecEntry{ones, structured, FlipTarget::kKey, bit, ratio, std::move(note)};
  };
  auto pt_row = [&](std::size_t bit, double ratio, std::string note) {
    return TrialSpecEntry{structured, ones, FlipTarget::kPlaintext, bit, ratio, std::move(note)};
  };
  switch (variant) {
    case Variant::kSF64:
      return {key_row(24, 0.6250, recovered),
              key_row(39, 0.5156, "printed flipped key repeats row 1; mirror of bit 24 used"),
              pt_row(42, 0.5938, recovered),
              pt_row(21, 0.5938, "printed flipped input shows no change; mirror of bit 42 used")};
    case Variant::kSF128:
      return {key_row(45, 0.5546, recovered), key_row(39, 0.5546, recovered),
              pt_row(60, 0.4765, recovered), pt_row(32, 0.4765, recovered)};
    case Variant::kSF192:
      return {key_row(33, 0.4531, recovered), key_row(42, 0.4375, recovered),
              pt_row(158, 0.4688, "printed flipped input shows no change; mirror of bit 33 used"),
              pt_row(149, 0.4688, "printed flipped input shows no change; mirror of bit 42 used")};
  }
  return {};
}

double mean_ratio(std::span<const double> ratios) {
  if (ratios.empty()) throw Error(ErrorCode::kEmptyInput, "mean of an empty ratio list");
  double sum = 0.0;
  for (const double r : ratios) sum += r;
  return sum / static_cast<double>(ratios.size());
}

SacVerdict sac_verdict(double mean, double tolerance) {
  const double margin = mean - 0.5;
  return {std::abs(margin) <= tolerance, margin};
}

SacVerdict sac_verdict(const AvalancheReport& report, double tolerance) {
  return sac_verdict(report.mean_ratio, tolerance);
}

Histogram256 histogram(std::span<const std::uint8_t> pixels) {
  Histogram256 h;
  for (const std::uint8_t p : pixels) ++h.counts[p];
  h.total = pixels.size();
  return h;
}

Histogram256 histogram(const GrayImage& image) { return histogram(image.pixels); }

double entropy(const Histogram256& hist) {
  if (hist.total == 0) throw Error(ErrorCode::kEmptyInput, "entropy of an empty histogram");
  const double total = static_cast<double>(hist.total);
  double e = 0.0;
  for (const auto c : hist.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    e -= p * std::log2(p);
  }
  return e < 0.0 ? 0.0 : e;  // a single occupied bin yields -0.0
}

double percent_change(double original, double encrypted) {
  if (!(original > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "percent change needs a positive original value");
  }
  return (encrypted - original) / original * 100.0;
}

double chi_square_uniform(const Histogram256& hist) {
  if (hist.total == 0) throw Error(ErrorCode::kEmptyInput, "chi-square of an empty histogram");
  const double expected = static_cast<double>(hist.total) / 256.0;
  double chi = 0.0;
  for (const auto c : hist.counts) {
    const double d = static_cast<double>(c) - expected;
    chi += d * d / expected;
  }
  return chi;
}

EntropyReport entropy_report(const Histogram256& original, const Histogram256& encrypted) {
  EntropyReport r;
  r.entropy_original = entropy(original);
  r.entropy_encrypted = entropy(encrypted);
  r.percent_change = percent_change(r.entropy_original, r.entropy_encrypted);
  return r;
}

double round_to(double value, int decimals) {
  // Rounds the exact binary value; scaling by 10^d first can push 0.58205
  // (stored just below the half) over it.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return std::strtod(buf, nullptr);
}

}  // namespace sf
