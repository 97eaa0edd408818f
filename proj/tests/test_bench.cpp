#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sf/bench.hpp"
#include "sf/cipher.hpp"

using namespace sf;

namespace {
const CipherConstants& canon(Variant v) { return canonical_constants().get(v); }
}  // namespace

TEST_CASE("bench preconditions") {
  CHECK_THROWS_AS(time_encrypt(canon(Variant::kSF64), 64, 0, 0), Error);
  CHECK_THROWS_AS(time_encrypt(canon(Variant::kSF192), 23, 1, 0), Error);
  CHECK_THROWS_AS(time_key_expansion(canon(Variant::kSF64), 0, 0), Error);
}

TEST_CASE("timed output matches untimed encryption") {
  for (const Variant v : kAllVariants) {
    const auto r = time_encrypt(canon(v), 1000, 3, 1, 77);
    CHECK(r.processed_bytes % block_bytes(v) == 0);
    CHECK(r.processed_bytes >= 1000);
    const auto input = bench_workload(v, 1000, 77);
    std::vector<std::uint8_t> out(input.size());
    encrypt_blocks(input, out, derive_round_keys(bench_key(v, 77), canon(v)), canon(v));
    CHECK(r.checksum == fold_checksum(out));
    CHECK(r.mean_ms >= 0.0);
    CHECK(r.stddev_ms >= 0.0);
    CHECK_FALSE(r.machine.empty());
  }
}

TEST_CASE("repeat runs agree within noise") {
  const auto a = time_encrypt(canon(Variant::kSF64), 16 * 1024, 100, 5);
  const auto b = time_encrypt(canon(Variant::kSF64), 16 * 1024, 100, 5);
  const double pooled = std::sqrt((a.stddev_ms * a.stddev_ms + b.stddev_ms * b.stddev_ms) / 2.0);
  CHECK(std::abs(a.mean_ms - b.mean_ms) < std::max(3.0 * pooled, 0.25 * a.mean_ms) + 1e-3);
}

TEST_CASE("workload scaling is linear") {
  // Alternate short batches and keep the fastest of each; the minimum is the
  // least disturbed by other load on the machine.
  double small = 1e300;
  double large = 1e300;
  for (int i = 0; i < 8; ++i) {
    small = std::min(small, time_encrypt(canon(Variant::kSF128), 128 * 1024, 3, 1).mean_ms);
    large = std::min(large, time_encrypt(canon(Variant::kSF128), 256 * 1024, 3, 1).mean_ms);
  }
  const double ratio = large / small;
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);
}

TEST_CASE("compare variants") {
  const std::vector<Variant> order = {Variant::kSF64, Variant::kSF192, Variant::kSF64};
  const auto cmp = compare_variants(canonical_constants(), order, 64 * 1024, 10, 2);
  REQUIRE(cmp.reports.size() == 3);
  CHECK(cmp.reports[0].variant == Variant::kSF64);
  CHECK(cmp.reports[2].variant == Variant::kSF64);
  CHECK(cmp.reports[0].machine == cmp.reports[1].machine);
  CHECK(cmp.reports[1].machine == cmp.reports[2].machine);
  CHECK(cmp.fastest_first.size() == 3);
  CHECK(cmp.reports[1].ns_per_byte() > cmp.reports[0].ns_per_byte());
}

TEST_CASE("key expansion timed on its own") {
  const auto r = time_key_expansion(canon(Variant::kSF192), 50, 5);
  CHECK(r.runs == 50);
  CHECK(r.workload_bytes == 0);
  CHECK(r.mean_ms > 0.0);
}
