// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on
// any FAIL. Criterion 8 needs a user-supplied cameraman image; point
// SF_TEST_IMAGES at a directory of P5/P6 images to enable it (and to add
// those images to criterion 9).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "sf/analysis.hpp"
#include "sf/bench.hpp"
#include "sf/cipher.hpp"
#include "sf/imagio.hpp"
#include "test_support.hpp"

using namespace sf;
namespace fs = std::filesystem;

namespace {

enum class Outcome { kPass, kFail, kSkip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass(std::string d) { return {Outcome::kPass, std::move(d)}; }
Verdict fail(std::string d) { return {Outcome::kFail, std::move(d)}; }
Verdict check(bool ok, std::string d) { return {ok ? Outcome::kPass : Outcome::kFail, std::move(d)}; }

std::string fmt(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

const CipherConstants& canon(Variant v) { return canonical_constants().get(v); }

// Printed ciphertext pair from the first SF-64 avalanche row.
constexpr const char* kPrintedRow1A = "925BEDEAD4E631EB";
constexpr const char* kPrintedRow1B = "B83D3E9D07911E50";

struct PrintedAvalancheTable {
  Variant variant;
  std::vector<double> ratios;
  double mean;
};

const std::vector<PrintedAvalancheTable> kAvalancheTables = {
    {Variant::kSF64, {0.6250, 0.5156, 0.5938, 0.5938}, 0.5820},
    {Variant::kSF128, {0.5546, 0.5546, 0.4765, 0.4765}, 0.5155},
    {Variant::kSF192, {0.4531, 0.4375, 0.4688, 0.4688}, 0.4570},
};

struct PrintedEntropyRow {
  const char* label;
  double original;
  double encrypted;
  double percent;
};

// Six images plus the mean row for each of the three entropy tables.
const std::vector<std::vector<PrintedEntropyRow>> kEntropyTables = {
    {{"Cameraman", 7.0097, 7.8705, 12.28}, {"Rice", 7.0115, 7.9448, 13.31},
     {"Lena", 7.4618, 7.9643, 6.73}, {"Football", 6.6861, 7.8210, 16.97},
     {"ORLFace", 7.5332, 7.9723, 5.83}, {"Onion", 7.3299, 7.9300, 8.19},
     {"mean", 7.1720, 7.9172, 10.39}},
    {{"Cameraman", 7.0097, 7.9927, 14.02}, {"Rice", 7.0115, 7.9923, 13.99},
     {"Lena", 7.4618, 7.9945, 7.14}, {"Football", 6.6861, 7.9917, 19.53},
     {"ORLFace", 7.5332, 7.9973, 6.16}, {"Onion", 7.3299, 7.9847, 8.93},
     {"mean", 7.1720, 7.9922, 11.44}},
    {{"Cameraman", 7.0097, 7.9878, 13.95}, {"Rice", 7.0115, 7.9834, 13.86},
     {"Lena", 7.4618, 7.9940, 7.13}, {"Football", 6.6861, 7.9658, 19.14},
     {"ORLFace", 7.5332, 7.9971, 6.15}, {"Onion", 7.3299, 7.9774, 8.83},
     {"mean", 7.1720, 7.9842, 11.33}},
};

// FNV-1a of the frozen fixture files, byte for byte.
constexpr std::uint64_t kKatFileHash = 0xbc0ef5eb8730c1f8ULL;
constexpr std::uint64_t kScheduleFileHash = 0x18ee03137ca906bcULL;

CipherKey structured_key(Variant v) {
  return CipherKey::from_hex(
      v, std::string("000A4A6DE8DB6667000A4A6DE8DB6667000A4A6DE8DB6667").substr(0, block_bits(v) / 4));
}

struct NamedImage {
  std::string name;
  GrayImage image;
};

std::vector<NamedImage> supplied_images() {
  std::vector<NamedImage> out;
  const char* dir = std::getenv("SF_TEST_IMAGES");
  if (dir == nullptr || !fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (e.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back({f.filename().string(), load_image_file(f)});
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// ---- criteria ------------------------------------------------------------

Verdict round_trip() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20140523);
  std::size_t failures = 0;
  constexpr std::size_t kPairs = 10000;
  for (const Variant v : kAllVariants) {
    const auto& c = canon(v);
    for (std::size_t i = 0; i < kPairs; ++i) {
      CipherKey key(v);
      Block pt(v);
      for (auto& b : key.bytes()) b = static_cast<std::uint8_t>(rng());
      for (auto& b : pt.bytes()) b = static_cast<std::uint8_t>(rng());
      const auto s = derive_round_keys(key, c);
      if (decrypt_block(encrypt_block(pt, s, c), s, c) != pt) ++failures;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return check(failures == 0 && secs < 10.0, std::to_string(3 * kPairs) + " pairs, " +
                                                 std::to_string(failures) + " failures, " + fmt(secs, 2) +
                                                 " s (limit 10 s)");
}

Verdict toy_bijectivity() {
  std::mt19937_64 rng(7);
  const auto& sboxes = canon(Variant::kSF64).sboxes;
  std::size_t bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::array<std::uint8_t, kRounds> rk{};
    for (auto& k : rk) k = static_cast<std::uint8_t>(rng());
    std::set<std::uint8_t> images;
    for (int x = 0; x < 256; ++x) images.insert(toy::encrypt(static_cast<std::uint8_t>(x), rk, sboxes));
    if (images.size() != 256) ++bad;
  }
  return check(bad == 0, "50 random schedules, " + std::to_string(bad) + " non-permutations");
}

Verdict avalanche_aggregation() {
  std::string detail;
  bool ok = true;
  for (const auto& t : kAvalancheTables) {
    const double m = mean_ratio(t.ratios);
    const bool row_ok = std::abs(m - t.mean) <= 0.00005 + 1e-12 && round_to(m, 4) == t.mean;
    ok = ok && row_ok;
    detail += std::string(variant_name(t.variant)) + " " + fmt(round_to(m, 4), 4) + " vs " + fmt(t.mean, 4) + "; ";
  }
  return check(ok, detail);
}

Verdict statistical_avalanche() {
  std::string detail;
  bool ok = true;
  for (const Variant v : kAllVariants) {
    const auto r = avalanche_suite(v, canon(v), TrialSpec::random(10000), 42);
    const auto keys = std::count_if(r.trials.begin(), r.trials.end(),
                                    [](const AvalancheTrial& t) { return t.flip_target == FlipTarget::kKey; });
    const bool mixed = keys > 0 && keys < static_cast<std::ptrdiff_t>(r.trials.size());
    ok = ok && mixed && r.mean_ratio >= 0.45 && r.mean_ratio <= 0.55;
    detail += std::string(variant_name(v)) + " " + fmt(r.mean_ratio, 4) + " (" + std::to_string(keys) +
              " key flips); ";
  }
  return check(ok, detail + "bounds [0.45, 0.55]");
}

Verdict hamming_oracle() {
  const auto a = Block::from_hex(Variant::kSF64, kPrintedRow1A);
  const auto b = Block::from_hex(Variant::kSF64, kPrintedRow1B);
  const auto d = hamming_distance(a, b);
  const double ratio = static_cast<double>(d) / 64.0;
  return check(d == 40 && fmt(ratio, 4) == "0.6250",
               std::to_string(d) + " differing bits, ratio " + fmt(ratio, 4));
}

Verdict entropy_correctness() {
  Histogram256 uniform{};
  uniform.counts.fill(10);
  uniform.total = 2560;
  Histogram256 single{};
  single.counts[77] = 4096;
  single.total = 4096;
  const bool fixed_ok = entropy(uniform) == 8.0 && entropy(single) == 0.0;

  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Histogram256 h{};
    const auto occupied = 1 + rng() % 256;
    for (std::size_t k = 0; k < 256; ++k) {
      h.counts[k] = k < occupied ? rng() % 5000 : 0;
      h.total += h.counts[k];
    }
    std::shuffle(h.counts.begin(), h.counts.end(), rng);
    if (h.total == 0) {
      h.counts[0] = 1;
      h.total = 1;
    }
    // Brute-force oracle: log2 N - (1/N) * sum c log2 c in extended precision.
    long double acc = 0.0L;
    for (const auto c : h.counts) {
      if (c > 0) acc += static_cast<long double>(c) * std::log2(static_cast<long double>(c));
    }
    const long double n = static_cast<long double>(h.total);
    const double oracle = static_cast<double>(std::log2(n) - acc / n);
    worst = std::max(worst, std::abs(entropy(h) - oracle));
  }
  std::ostringstream d;
  d << "uniform " << entropy(uniform) << ", single-bin " << entropy(single)
    << ", worst oracle gap " << std::scientific << std::setprecision(2) << worst << " over 1000 histograms";
  return check(fixed_ok && worst <= 1e-12, d.str());
}

Verdict percent_change_arithmetic() {
  std::size_t matched = 0;
  std::size_t total = 0;
  std::string misses;
  for (const auto& table : kEntropyTables) {
    for (const auto& row : table) {
      ++total;
      const double p = percent_change(row.original, row.encrypted);
      if (std::abs(p - row.percent) <= 0.01 + 1e-9) {
        ++matched;
      } else {
        misses += std::string(" ") + row.label + "=" + fmt(p, 4);
      }
    }
  }
  return check(matched == total && total == 21,
               std::to_string(matched) + "/" + std::to_string(total) + " triples within 0.01" + misses);
}

Verdict cameraman(const std::vector<NamedImage>& images) {
  const auto it = std::find_if(images.begin(), images.end(), [](const NamedImage& n) {
    return lower(n.name).find("cameraman") != std::string::npos;
  });
  if (it == images.end()) {
    return {Outcome::kSkip, "no cameraman image supplied (set SF_TEST_IMAGES to a directory holding one)"};
  }
  const auto& img = it->image;
  if (img.width != 256 || img.height != 256) {
    return fail(it->name + " is " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                ", expected 256x256");
  }
  const double eo = entropy(histogram(img));
  const auto art = encrypt_image(img, structured_key(Variant::kSF128), canon(Variant::kSF128));
  const double ee = entropy(histogram(art.display_image));
  return check(std::abs(eo - 7.0097) <= 0.001 && ee >= 7.95,
               it->name + ": original " + fmt(eo, 4) + " (want 7.0097 +- 0.001), SF128 encrypted " + fmt(ee, 4) +
                   " (want >= 7.95)");
}

Verdict histogram_flatness(const std::vector<NamedImage>& supplied) {
  std::vector<NamedImage> images;
  for (const auto& s : supplied) {
    if (s.image.width >= 64 && s.image.height >= 64) images.push_back(s);
  }
  const std::size_t from_user = images.size();
  images.push_back({"synthetic-256x256", testing::natural_image(256, 256, 1)});
  images.push_back({"synthetic-220x220", testing::natural_image(220, 220, 2)});
  images.push_back({"synthetic-135x198", testing::natural_image(135, 198, 3)});
  images.push_back({"synthetic-64x64", testing::natural_image(64, 64, 4)});

  std::size_t checks = 0;
  std::string misses;
  for (const auto& im : images) {
    const auto ho = histogram(im.image);
    for (const Variant v : kAllVariants) {
      const auto he = histogram(encrypt_image(im.image, structured_key(v), canon(v)).display_image);
      ++checks;
      if (!(chi_square_uniform(he) < chi_square_uniform(ho) && entropy(he) > entropy(ho))) {
        misses += " " + im.name + "/" + std::string(variant_name(v));
      }
    }
  }
  return check(misses.empty(), std::to_string(checks) + " image/variant pairs (" + std::to_string(from_user) +
                                   " supplied images)" + (misses.empty() ? "" : ", failing:" + misses));
}

Verdict timing_ordering() {
  const auto cmp = compare_variants(canonical_constants(), kAllVariants, std::size_t{1} << 20, 100, 5);
  const auto& r = cmp.reports;
  const bool ok = r[0].ns_per_byte() < r[1].ns_per_byte() && r[1].ns_per_byte() < r[2].ns_per_byte();
  std::string detail;
  for (const auto& t : r) {
    detail += std::string(variant_name(t.variant)) + " " + fmt(t.ns_per_byte(), 2) + " ns/byte; ";
  }
  return check(ok, detail + "1 MiB x 100 runs");
}

std::string slurp(const fs::path& p) {
  const auto bytes = read_file(p);
  return std::string(bytes.begin(), bytes.end());
}

Verdict kat_stability() {
  std::size_t rows = 0;
  std::string misses;
  for (const auto& row : testing::read_fixture("kat_v1.txt")) {
    const auto& f = row.fields;
    const Variant v = parse_variant(f[0]);
    const auto s = derive_round_keys(CipherKey::from_hex(v, f[1]), canon(v));
    ++rows;
    if (encrypt_block(Block::from_hex(v, f[2]), s, canon(v)).hex() != f[3]) misses += " kat:" + f[1];
  }
  for (const auto& row : testing::read_fixture("schedule_v1.txt")) {
    const auto& f = row.fields;
    const Variant v = parse_variant(f[0]);
    const auto s = derive_round_keys(CipherKey::from_hex(v, f[1]), canon(v));
    ++rows;
    if (s.round_keys()[std::stoul(f[2])].hex() != f[3]) misses += " schedule:" + f[0] + "/" + f[2];
  }
  const bool files_ok = version_hash(slurp(testing::data_dir() / "kat_v1.txt")) == kKatFileHash &&
                        version_hash(slurp(testing::data_dir() / "schedule_v1.txt")) == kScheduleFileHash;
  return check(misses.empty() && files_ok && rows == 39,
               std::to_string(rows) + " frozen rows" + (files_ok ? ", fixture hashes unchanged" : ", FIXTURE EDITED") +
                   misses);
}

}  // namespace

int main() {
  const auto images = supplied_images();
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"round-trip correctness", round_trip},
      {"toy-instance bijectivity", toy_bijectivity},
      {"avalanche aggregation of printed ratios", avalanche_aggregation},
      {"statistical avalanche", statistical_avalanche},
      {"hamming oracle on printed ciphertexts", hamming_oracle},
      {"entropy correctness", entropy_correctness},
      {"percent-change arithmetic", percent_change_arithmetic},
      {"conditional cameraman reproduction", [&] { return cameraman(images); }},
      {"histogram flatness", [&] { return histogram_flatness(images); }},
      {"timing ordering", timing_ordering},
      {"known-answer stability", kat_stability},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const char* tag = v.outcome == Outcome::kPass ? "PASS" : v.outcome == Outcome::kFail ? "FAIL" : "SKIP";
    if (v.outcome == Outcome::kFail) ++failures;
    std::cout << "[" << tag << "] " << i + 1 << ". " << criteria[i].first << ": " << v.detail << std::endl;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria met" : "acceptance: " + std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
