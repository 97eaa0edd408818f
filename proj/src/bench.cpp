#include "sf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "sf/cipher.hpp"

#if defined(__linux__)
#include <sched.h>
#include <sys/utsname.h>
#endif

#ifndef SF_BUILD_PROFILE
#define SF_BUILD_PROFILE "unknown"
#endif

namespace sf {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady);

// Restricts the thread to the CPU it is running on for the guard's lifetime.
class CpuPin {
 public:
  CpuPin() {
#if defined(__linux__)
    if (sched_getaffinity(0, sizeof(saved_), &saved_) != 0) return;
    const int cpu = sched_getcpu();
    if (cpu < 0) return;
    cpu_set_t one;
    CPU_ZERO(&one);
    CPU_SET(cpu, &one);
    pinned_ = sched_setaffinity(0, sizeof(one), &one) == 0;
#endif
  }
  ~CpuPin() {
#if defined(__linux__)
    if (pinned_) sched_setaffinity(0, sizeof(saved_), &saved_);
#endif
  }
  CpuPin(const CpuPin&) = delete;
  CpuPin& operator=(const CpuPin&) = delete;

  bool pinned() const { return pinned_; }

 private:
#if defined(__linux__)
  cpu_set_t saved_{};
#endif
  bool pinned_ = false;
};

volatile std::uint64_t g_sink = 0;

void fill_random(std::span<std::uint8_t> out, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < out.size(); i += 8) {
    std::uint64_t x = rng();
    for (std::size_t k = i; k < std::min(i + 8, out.size()); ++k, x >>= 8) {
      out[k] = static_cast<std::uint8_t>(x);
    }
  }
}

void summarize(TimingReport& r, const std::vector<double>& samples_ms) {
  const double n = static_cast<double>(samples_ms.size());
  r.mean_ms = std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) / n;
  double ss = 0.0;
  for (const double s : samples_ms) ss += (s - r.mean_ms) * (s - r.mean_ms);
  r.stddev_ms = samples_ms.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

void check_runs(std::size_t runs) {
  if (runs == 0) throw Error(ErrorCode::kInvalidArgument, "benchmark needs at least one timed run");
}

}  // namespace

std::string machine_description() {
  std::string cpu = "unknown cpu";
#if defined(__linux__)
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      if (const auto colon = line.find(':'); colon != std::string::npos) {
        cpu = line.substr(colon + 1);
        cpu.erase(0, cpu.find_first_not_of(' '));
      }
      break;
    }
  }
  std::string os = "linux";
  utsname u{};
  if (uname(&u) == 0) os = std::string(u.sysname) + " " + u.release + " " + u.machine;
#else
  std::string os = "unknown os";
#endif
  return cpu + "; " + os + "; build " + SF_BUILD_PROFILE;
}

std::uint64_t fold_checksum(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CipherKey bench_key(Variant v, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  CipherKey key(v);
  fill_random(key.bytes(), rng);
  return key;
}

std::vector<std::uint8_t> bench_workload(Variant variant, std::size_t workload_bytes,
                                         std::uint64_t seed) {
  const std::size_t bb = block_bytes(variant);
  if (workload_bytes < bb) {
    throw Error(ErrorCode::kInvalidArgument, "workload of " + std::to_string(workload_bytes) +
                                                 " bytes is smaller than one " +
                                                 std::to_string(bb) + "-byte block");
  }
  std::vector<std::uint8_t> data((workload_bytes + bb - 1) / bb * bb, 0);
  std::mt19937_64 rng(seed);
  fill_random(std::span(data).first(workload_bytes), rng);
  return data;
}

namespace {

struct EncryptJob {
  const CipherConstants& constants;
  std::vector<std::uint8_t> input;
  std::vector<std::uint8_t> output;
  RoundKeySchedule schedule;
  std::vector<double> samples;
};

EncryptJob make_job(const CipherConstants& constants, std::size_t workload_bytes, std::uint64_t seed) {
  const Variant v = constants.variant;
  auto input = bench_workload(v, workload_bytes, seed);
  std::vector<std::uint8_t> output(input.size());
  return EncryptJob{constants, std::move(input), std::move(output),
                    derive_round_keys(bench_key(v, seed), constants), {}};
}

void untimed_pass(EncryptJob& job) {
  encrypt_blocks(job.input, job.output, job.schedule, job.constants);
  g_sink = g_sink + job.output.back();
}

void timed_pass(EncryptJob& job) {
  const auto t0 = Clock::now();
  encrypt_blocks(job.input, job.output, job.schedule, job.constants);
  g_sink = g_sink + job.output.back();
  const auto t1 = Clock::now();
  job.samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
}

TimingReport finish(const EncryptJob& job, std::size_t workload_bytes, std::size_t warmup_runs,
                    std::uint64_t seed, bool pinned) {
  TimingReport r;
  r.variant = job.constants.variant;
  r.workload_bytes = workload_bytes;
  r.processed_bytes = job.input.size();
  r.runs = job.samples.size();
  r.warmup_runs = warmup_runs;
  r.machine = machine_description();
  r.pinned = pinned;
  r.seed = seed;
  r.checksum = fold_checksum(job.output);
  summarize(r, job.samples);
  return r;
}

}  // namespace

TimingReport time_encrypt(const CipherConstants& constants, std::size_t workload_bytes,
                          std::size_t runs, std::size_t warmup_runs, std::uint64_t seed) {
  check_runs(runs);
  EncryptJob job = make_job(constants, workload_bytes, seed);
  CpuPin pin;
  for (std::size_t i = 0; i < warmup_runs; ++i) untimed_pass(job);
  job.samples.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) timed_pass(job);
  return finish(job, workload_bytes, warmup_runs, seed, pin.pinned());
}

TimingReport time_key_expansion(const CipherConstants& constants, std::size_t runs,
                                std::size_t warmup_runs, std::uint64_t seed) {
  check_runs(runs);
  const CipherKey key = bench_key(constants.variant, seed);
  TimingReport r;
  r.variant = constants.variant;
  r.runs = runs;
  r.warmup_runs = warmup_runs;
  r.machine = machine_description();
  r.seed = seed;

  CpuPin pin;
  r.pinned = pin.pinned();
  for (std::size_t i = 0; i < warmup_runs; ++i) {
    g_sink = g_sink + derive_round_keys(key, constants).round_keys().back().bytes()[0];
  }
  std::vector<double> samples;
  samples.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    const auto t0 = Clock::now();
    const auto schedule = derive_round_keys(key, constants);
    g_sink = g_sink + schedule.round_keys().back().bytes()[0];
    const auto t1 = Clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    r.checksum = fold_checksum(schedule.round_keys().back().bytes());
  }
  summarize(r, samples);
  return r;
}

VariantComparison compare_variants(const ConstantSet& constants, std::span<const Variant> variants,
                                   std::size_t workload_bytes, std::size_t runs,
                                   std::size_t warmup_runs, std::uint64_t seed) {
  check_runs(runs);
  std::vector<EncryptJob> jobs;
  jobs.reserve(variants.size());
  for (const Variant v : variants) jobs.push_back(make_job(constants.get(v), workload_bytes, seed));

  CpuPin pin;
  for (std::size_t i = 0; i < warmup_runs; ++i) {
    for (auto& job : jobs) untimed_pass(job);
  }
  // Round-robin so drift in machine speed lands on every variant alike.
  for (std::size_t i = 0; i < runs; ++i) {
    for (auto& job : jobs) timed_pass(job);
  }
  VariantComparison cmp;
  for (const auto& job : jobs) cmp.reports.push_back(finish(job, workload_bytes, warmup_runs, seed, pin.pinned()));
  std::vector<std::size_t> idx(cmp.reports.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return cmp.reports[a].ns_per_byte() < cmp.reports[b].ns_per_byte();
  });
  for (const auto i : idx) cmp.fastest_first.push_back(cmp.reports[i].variant);
  return cmp;
}

}  // namespace sf
