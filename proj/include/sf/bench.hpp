#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sf/constants.hpp"

namespace sf {

/// Mean and spread of repeated timed encryption passes over one workload.
struct TimingReport {
  Variant variant = Variant::kSF64;
  std::size_t workload_bytes = 0;
  std::size_t processed_bytes = 0;  // workload rounded up to whole blocks
  std::size_t runs = 0;
  std::size_t warmup_runs = 0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  std::string machine;
  bool pinned = false;
  std::uint64_t seed = 0;
  std::uint64_t checksum = 0;  // folded ciphertext of the last timed pass

  double ns_per_byte() const {
    return processed_bytes == 0 ? 0.0 : mean_ms * 1e6 / static_cast<double>(processed_bytes);
  }
};

inline constexpr std::uint64_t kDefaultBenchSeed = 0x5F0C'E000'0000'0001ULL;

/// CPU model, OS and build profile of the running host.
std::string machine_description();

/// Times `runs` full ECB encryption passes over a seeded random workload after
/// `warmup_runs` untimed ones. Key expansion happens once, outside the timed
/// region.
TimingReport time_encrypt(const CipherConstants& constants, std::size_t workload_bytes,
                          std::size_t runs, std::size_t warmup_runs,
                          std::uint64_t seed = kDefaultBenchSeed);

/// Same harness around key expansion alone; workload_bytes is zero.
TimingReport time_key_expansion(const CipherConstants& constants, std::size_t runs,
                                std::size_t warmup_runs, std::uint64_t seed = kDefaultBenchSeed);

/// The workload time_encrypt would use, and its ciphertext without timing.
std::vector<std::uint8_t> bench_workload(Variant variant, std::size_t workload_bytes,
                                         std::uint64_t seed);
std::uint64_t fold_checksum(std::span<const std::uint8_t> bytes);
CipherKey bench_key(Variant variant, std::uint64_t seed);

struct VariantComparison {
  std::vector<TimingReport> reports;
  std::vector<Variant> fastest_first;  // by ns per byte
};

/// Runs every requested variant (repeats allowed) on the same workload size.
/// Timed passes alternate between variants rather than running back to back.
VariantComparison compare_variants(const ConstantSet& constants, std::span<const Variant> variants,
                                   std::size_t workload_bytes, std::size_t runs,
                                   std::size_t warmup_runs, std::uint64_t seed = kDefaultBenchSeed);

}  // namespace sf
