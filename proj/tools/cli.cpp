#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "sf/analysis.hpp"
#include "sf/bench.hpp"
#include "sf/cipher.hpp"
#include "sf/imagio.hpp"

namespace sf::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr double kSacTolerance = 0.05;

// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string variant = "sf64";
  std::string constants_path;
  std::uint64_t seed = 1;
  std::string format;
  std::string out_path;
};

struct Context {
  RunConfig cfg;
  std::istream& in;
  std::ostream& out;
  std::optional<ConstantSet> constants;

  Variant variant() const { return parse_variant(cfg.variant); }

  const ConstantSet& constant_set() {
    if (!constants) {
      if (cfg.constants_path.empty()) {
        constants = canonical_constants();
      } else {
        try {
          constants = ConstantSet::load(cfg.constants_path);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kIo) throw;
          throw Error(ErrorCode::kInvalidConstants, e.what());
        }
      }
      if (const auto report = constants->validate(); !report.ok()) {
        std::string all;
        for (const auto& v : report.violations) all += (all.empty() ? "" : "; ") + v;
        throw Error(ErrorCode::kInvalidConstants, cfg.constants_path + ": " + all);
      }
    }
    return *constants;
  }

  const CipherConstants& cipher_constants(Variant v) { return constant_set().get(v); }

  std::string format_or(const std::string& fallback) const {
    return cfg.format.empty() ? fallback : cfg.format;
  }

  Json meta(std::optional<Variant> v) {
    Json m;
    m["tool"] = "sfcli";
    m["tool_version"] = kToolVersion;
    m["constant_version"] = constant_set().version();
    m["rng_seed"] = cfg.seed;
    if (v) m["variant"] = variant_name(*v);
    return m;
  }

  void emit(const std::string& text) {
    if (cfg.out_path.empty()) {
      out << text;
      return;
    }
    write_file(cfg.out_path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }

  void emit(const Json& j) { emit(j.dump(2) + "\n"); }
};

std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

// "-" reads the value from stdin.
std::string hex_arg(Context& ctx, std::string value) {
  if (value == "-") {
    std::getline(ctx.in, value);
  }
  value.erase(0, value.find_first_not_of(" \t\r\n"));
  value.erase(value.find_last_not_of(" \t\r\n") + 1);
  return value;
}

Json trial_json(const AvalancheTrial& t, std::size_t index) {
  Json j;
  j["index"] = index;
  j["key"] = t.key_hex;
  j["input"] = t.plaintext_hex;
  j["flip_target"] = to_string(t.flip_target);
  j["bit_index"] = t.bit_index;
  j["output_a"] = t.ciphertext_a.hex();
  j["output_b"] = t.ciphertext_b.hex();
  j["ratio"] = round_to(t.ratio, 4);
  if (t.printed_ratio) j["printed_ratio"] = *t.printed_ratio;
  return j;
}

Json sac_json(double mean) {
  const auto v = sac_verdict(mean, kSacTolerance);
  return Json{{"tolerance", kSacTolerance}, {"pass", v.pass}, {"margin", round_to(v.margin, 4)}};
}

Json avalanche_json(Context& ctx, const AvalancheReport& r, const std::vector<TrialSpecEntry>* preset) {
  Json j;
  j["meta"] = ctx.meta(r.variant);
  j["trial_count"] = r.trial_count;
  j["mean_ratio"] = round_to(r.mean_ratio, 4);
  j["sac"] = sac_json(r.mean_ratio);
  if (preset) {
    std::vector<double> printed;
    Json notes = Json::array();
    for (const auto& e : *preset) {
      printed.push_back(*e.printed_ratio);
      notes.push_back(e.note);
    }
    j["published_reference"] = Json{{"ratios", printed},
                                {"mean_ratio", round_to(mean_ratio(printed), 4)},
                                {"row_notes", notes}};
  }
  Json trials = Json::array();
  for (std::size_t i = 0; i < r.trials.size(); ++i) trials.push_back(trial_json(r.trials[i], i + 1));
  j["trials"] = trials;
  return j;
}

std::string table_name(Variant v, const char* kind) {
  static const char* kAval[] = {"1A", "2B", "3C"};
  static const char* kEnt[] = {"5A", "6B", "7C"};
  const auto i = static_cast<std::size_t>(v) - 1;
  return std::string(kind) == "avalanche" ? kAval[i] : kEnt[i];
}

CipherKey default_image_key(Variant v) {
  return CipherKey::from_hex(
      v, std::string("000A4A6DE8DB6667000A4A6DE8DB6667000A4A6DE8DB6667").substr(0, block_bits(v) / 4));
}

struct ImageRow {
  std::string name;
  GrayImage image;
};

std::vector<ImageRow> load_image_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ImageRow> rows;
  for (const auto& f : files) rows.push_back({f.filename().string(), load_image_file(f)});
  return rows;
}

Json entropy_row_json(const std::string& name, const GrayImage& img, const Histogram256& ho,
                      const Histogram256& he) {
  const auto rep = entropy_report(ho, he);
  Json j;
  j["image"] = name;
  j["dimension"] = std::to_string(img.width) + "X" + std::to_string(img.height);
  j["entropy_original"] = round_to(rep.entropy_original, 4);
  j["entropy_encrypted"] = round_to(rep.entropy_encrypted, 4);
  j["percent_change"] = round_to(rep.percent_change, 2);
  j["chi_square_original"] = round_to(chi_square_uniform(ho), 2);
  j["chi_square_encrypted"] = round_to(chi_square_uniform(he), 2);
  return j;
}

Json timing_json(const TimingReport& r) {
  Json j;
  j["variant"] = variant_name(r.variant);
  j["workload_bytes"] = r.workload_bytes;
  j["processed_bytes"] = r.processed_bytes;
  j["runs"] = r.runs;
  j["warmup_runs"] = r.warmup_runs;
  j["mean_ms"] = r.mean_ms;
  j["stddev_ms"] = r.stddev_ms;
  j["ns_per_byte"] = r.ns_per_byte();
  j["machine"] = r.machine;
  j["pinned"] = r.pinned;
  j["seed"] = r.seed;
  return j;
}

std::string timing_csv(const std::vector<TimingReport>& reports) {
  std::ostringstream s;
  s << "variant,workload_bytes,runs,mean_ms,stddev_ms\n";
  for (const auto& r : reports) {
    s << variant_name(r.variant) << ',' << r.workload_bytes << ',' << r.runs << ','
      << fixed(r.mean_ms, 6) << ',' << fixed(r.stddev_ms, 6) << '\n';
  }
  return s.str();
}

void require_format(const std::string& f) {
  if (f != "json" && f != "csv" && f != "table") throw UsageError("unknown format '" + f + "'");
}

// ---- subcommands -------------------------------------------------------

struct KeyOpts {
  std::string key;
  std::string block;
  std::string in_file;
};

void cmd_expand_key(Context& ctx, const KeyOpts& o) {
  const Variant v = ctx.variant();
  const auto key = CipherKey::from_hex(v, hex_arg(ctx, o.key));
  const auto s = derive_round_keys(key, ctx.cipher_constants(v));
  const auto fmt = ctx.format_or("table");
  if (fmt == "json") {
    Json j;
    j["meta"] = ctx.meta(v);
    j["key"] = key.hex();
    Json keys = Json::array();
    for (const auto& rk : s.round_keys()) keys.push_back(rk.hex());
    j["round_keys"] = keys;
    ctx.emit(j);
  } else {
    std::ostringstream o2;
    if (fmt == "csv") o2 << "round,round_key\n";
    for (std::size_t r = 0; r < kRounds; ++r) {
      o2 << (fmt == "csv" ? "" : "K") << r + 1 << (fmt == "csv" ? "," : " ")
         << s.round_keys()[r].hex() << '\n';
    }
    ctx.emit(o2.str());
  }
}

void cmd_block(Context& ctx, const KeyOpts& o, bool decrypt) {
  if (o.in_file.empty() && o.block.empty()) {
    throw UsageError(decrypt ? "decrypt needs --ct or --in" : "encrypt needs --pt or --in");
  }
  if (!o.in_file.empty() && ctx.cfg.out_path.empty()) {
    throw UsageError("--in requires --out for the binary result");
  }
  const Variant v = ctx.variant();
  const auto& c = ctx.cipher_constants(v);
  const auto key = CipherKey::from_hex(v, hex_arg(ctx, o.key));
  const auto schedule = derive_round_keys(key, c);

  if (!o.in_file.empty()) {
    auto data = read_file(o.in_file);
    if (data.empty() || data.size() % block_bytes(v) != 0) {
      throw Error(ErrorCode::kWidthMismatch, o.in_file + " holds " + std::to_string(data.size()) +
                                                 " bytes, not a whole number of " +
                                                 std::to_string(block_bytes(v)) + "-byte blocks");
    }
    if (decrypt) {
      decrypt_blocks(data, data, schedule, c);
    } else {
      encrypt_blocks(data, data, schedule, c);
    }
    write_file(ctx.cfg.out_path, data);
    return;
  }
  const auto in = Block::from_hex(v, hex_arg(ctx, o.block));
  const auto result = decrypt ? decrypt_block(in, schedule, c) : encrypt_block(in, schedule, c);
  if (ctx.format_or("table") == "json") {
    Json j;
    j["meta"] = ctx.meta(v);
    j["key"] = key.hex();
    j[decrypt ? "ciphertext" : "plaintext"] = in.hex();
    j[decrypt ? "plaintext" : "ciphertext"] = result.hex();
    ctx.emit(j);
  } else {
    ctx.emit(result.hex() + "\n");
  }
}

struct AvalancheOpts {
  std::string preset;
  std::size_t trials = 1000;
};

void cmd_avalanche(Context& ctx, const AvalancheOpts& o) {
  const Variant v = ctx.variant();
  const auto& c = ctx.cipher_constants(v);
  std::vector<TrialSpecEntry> preset;
  TrialSpec spec;
  if (!o.preset.empty()) {
    if (o.preset != "paper") throw UsageError("unknown preset '" + o.preset + "' (expected paper)");
    preset = published_preset(v);
    spec = TrialSpec::listed(preset);
  } else {
    spec = TrialSpec::random(o.trials);
  }
  const auto report = avalanche_suite(v, c, spec, ctx.cfg.seed);
  const auto fmt = ctx.format_or("json");
  if (fmt == "json") {
    ctx.emit(avalanche_json(ctx, report, preset.empty() ? nullptr : &preset));
    return;
  }
  std::ostringstream s;
  if (fmt == "csv") {
    s << "# constant_version=" << c.version << " rng_seed=" << ctx.cfg.seed
      << " variant=" << variant_name(v) << " tool_version=" << kToolVersion << '\n';
    s << "index,flip_target,bit_index,key,input,output_a,output_b,ratio\n";
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
      const auto& t = report.trials[i];
      s << i + 1 << ',' << to_string(t.flip_target) << ',' << t.bit_index << ',' << t.key_hex << ','
        << t.plaintext_hex << ',' << t.ciphertext_a.hex() << ',' << t.ciphertext_b.hex() << ','
        << fixed(t.ratio, 4) << '\n';
    }
  } else {
    s << variant_name(v) << " avalanche, " << report.trial_count << " trials, seed " << ctx.cfg.seed
      << ", constants " << c.version << '\n';
    if (!preset.empty()) {
      for (std::size_t i = 0; i < report.trials.size(); ++i) {
        const auto& t = report.trials[i];
        s << "  " << i + 1 << "  " << to_string(t.flip_target) << " bit " << t.bit_index << "  "
          << fixed(t.ratio, 4) << "  (printed " << fixed(*t.printed_ratio, 4) << ")\n";
      }
    }
    const auto sac = sac_verdict(report.mean_ratio, kSacTolerance);
    s << "Mean avalanche ratio " << fixed(report.mean_ratio, 4) << "  SAC "
      << (sac.pass ? "pass" : "fail") << " (margin " << fixed(sac.margin, 4) << ")\n";
  }
  ctx.emit(s.str());
}

struct ImageOpts {
  std::string image;
  std::string key;
  std::string display;
  std::string blob;
  std::string decrypted;
};

void cmd_image_encrypt(Context& ctx, const ImageOpts& o) {
  const Variant v = ctx.variant();
  const auto& c = ctx.cipher_constants(v);
  const auto key = CipherKey::from_hex(v, hex_arg(ctx, o.key));
  const auto img = load_image_file(o.image);
  const auto art = encrypt_image(img, key, c);
  if (!o.display.empty()) save_pgm(art.display_image, o.display);
  if (!o.blob.empty()) write_file(o.blob, serialize_blob(art));
  Json j;
  j["meta"] = ctx.meta(v);
  j["image"] = fs::path(o.image).filename().string();
  j["width"] = img.width;
  j["height"] = img.height;
  j["pad_length"] = art.pad_length;
  j["ciphertext_bytes"] = art.ciphertext_blob.size();
  j["entropy"] = entropy_row_json(j["image"], img, histogram(img), histogram(art.display_image));
  ctx.emit(j);
}

void cmd_image_decrypt(Context& ctx, const ImageOpts& o, bool variant_given) {
  const auto art = parse_blob(read_file(o.blob));
  if (variant_given && ctx.variant() != art.variant) {
    throw Error(ErrorCode::kWidthMismatch, "blob is " + std::string(variant_name(art.variant)) +
                                               " but --variant says " + ctx.cfg.variant);
  }
  const auto key = CipherKey::from_hex(art.variant, hex_arg(ctx, o.key));
  const auto img = decrypt_image(art, key, ctx.cipher_constants(art.variant));
  save_pgm(img, o.decrypted);
  Json j;
  j["meta"] = ctx.meta(art.variant);
  j["width"] = img.width;
  j["height"] = img.height;
  j["pad_length"] = art.pad_length;
  ctx.emit(j);
}

void cmd_entropy(Context& ctx, const ImageOpts& o) {
  const auto img = load_image_file(o.image);
  const auto ho = histogram(img);
  const auto fmt = ctx.format_or("json");
  const std::string name = fs::path(o.image).filename().string();
  std::optional<Histogram256> he;
  std::optional<Variant> v;
  if (!o.key.empty()) {
    v = ctx.variant();
    const auto key = CipherKey::from_hex(*v, hex_arg(ctx, o.key));
    he = histogram(encrypt_image(img, key, ctx.cipher_constants(*v)).display_image);
  }
  if (fmt == "json") {
    Json j;
    j["meta"] = ctx.meta(v);
    if (he) {
      j["row"] = entropy_row_json(name, img, ho, *he);
    } else {
      j["image"] = name;
      j["dimension"] = std::to_string(img.width) + "X" + std::to_string(img.height);
      j["entropy"] = round_to(entropy(ho), 4);
    }
    ctx.emit(j);
    return;
  }
  std::ostringstream s;
  if (fmt == "csv") {
    s << "image,dimension,entropy_original" << (he ? ",entropy_encrypted,percent_change" : "") << '\n';
    s << name << ',' << img.width << 'X' << img.height << ',' << fixed(entropy(ho), 4);
    if (he) s << ',' << fixed(entropy(*he), 4) << ',' << fixed(percent_change(entropy(ho), entropy(*he)), 2);
    s << '\n';
  } else {
    s << name << "  " << img.width << 'X' << img.height << "  entropy " << fixed(entropy(ho), 4);
    if (he) {
      s << "  encrypted " << fixed(entropy(*he), 4) << "  change "
        << fixed(percent_change(entropy(ho), entropy(*he)), 2) << "%";
    }
    s << '\n';
  }
  ctx.emit(s.str());
}

void cmd_histogram(Context& ctx, const ImageOpts& o) {
  auto img = load_image_file(o.image);
  std::optional<Variant> v;
  if (!o.key.empty()) {
    v = ctx.variant();
    const auto key = CipherKey::from_hex(*v, hex_arg(ctx, o.key));
    img = encrypt_image(img, key, ctx.cipher_constants(*v)).display_image;
  }
  const auto h = histogram(img);
  const auto fmt = ctx.format_or("csv");
  if (fmt == "json") {
    Json j;
    j["meta"] = ctx.meta(v);
    j["total"] = h.total;
    j["counts"] = h.counts;
    ctx.emit(j);
    return;
  }
  std::ostringstream s;
  for (std::size_t i = 0; i < 256; ++i) s << i << ',' << h.counts[i] << '\n';
  ctx.emit(s.str());
}

struct BenchOpts {
  std::vector<std::string> variants;
  std::size_t workload = 1 << 20;
  std::size_t runs = 100;
  std::size_t warmup = 5;
  bool key_expansion = false;
};

std::vector<Variant> bench_variants(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllVariants.begin(), kAllVariants.end()};
  std::vector<Variant> out;
  for (const auto& n : names) out.push_back(parse_variant(n));
  return out;
}

void cmd_bench(Context& ctx, const BenchOpts& o) {
  const auto variants = bench_variants(o.variants);
  const auto cmp = compare_variants(ctx.constant_set(), variants, o.workload, o.runs, o.warmup, ctx.cfg.seed);
  const auto fmt = ctx.format_or("json");
  if (fmt == "csv") {
    ctx.emit(timing_csv(cmp.reports));
    return;
  }
  if (fmt == "table") {
    std::ostringstream s;
    s << "machine: " << machine_description() << '\n';
    for (const auto& r : cmp.reports) {
      s << variant_name(r.variant) << "  " << fixed(r.mean_ms, 3) << " ms +- " << fixed(r.stddev_ms, 3)
        << "  (" << fixed(r.ns_per_byte(), 2) << " ns/byte over " << r.processed_bytes << " bytes)\n";
    }
    ctx.emit(s.str());
    return;
  }
  Json j;
  j["meta"] = ctx.meta(std::nullopt);
  j["machine"] = machine_description();
  Json reports = Json::array();
  for (const auto& r : cmp.reports) reports.push_back(timing_json(r));
  j["reports"] = reports;
  Json order = Json::array();
  for (const Variant v : cmp.fastest_first) order.push_back(variant_name(v));
  j["fastest_first"] = order;
  if (o.key_expansion) {
    Json kx = Json::array();
    for (const Variant v : variants) {
      kx.push_back(timing_json(time_key_expansion(ctx.cipher_constants(v), o.runs, o.warmup, ctx.cfg.seed)));
    }
    j["key_expansion"] = kx;
  }
  ctx.emit(j);
}

struct ReportOpts {
  std::string images;
  std::size_t trials = 1000;
  std::size_t bench_workload = 1 << 20;
  std::size_t bench_runs = 20;
  bool skip_bench = false;
};

void cmd_paper_report(Context& ctx, const ReportOpts& o) {
  Json j;
  j["meta"] = ctx.meta(std::nullopt);

  Json aval = Json::array();
  for (const Variant v : kAllVariants) {
    const auto& c = ctx.cipher_constants(v);
    const auto preset = published_preset(v);
    const auto rep = avalanche_suite(v, c, TrialSpec::listed(preset), ctx.cfg.seed);
    Json t = avalanche_json(ctx, rep, &preset);
    t.erase("meta");
    Json row;
    row["table"] = table_name(v, "avalanche");
    row["variant"] = variant_name(v);
    row.update(t);
    const auto stat = avalanche_suite(v, c, TrialSpec::random(o.trials), ctx.cfg.seed);
    row["statistical"] = Json{{"trials", stat.trial_count},
                              {"mean_ratio", round_to(stat.mean_ratio, 4)},
                              {"sac", sac_json(stat.mean_ratio)}};
    aval.push_back(row);
  }
  j["avalanche"] = aval;

  std::vector<ImageRow> images;
  if (!o.images.empty()) images = load_image_dir(o.images);
  Json ent = Json::array();
  for (const Variant v : kAllVariants) {
    const auto& c = ctx.cipher_constants(v);
    const auto key = default_image_key(v);
    Json table;
    table["table"] = table_name(v, "entropy");
    table["variant"] = variant_name(v);
    table["key"] = key.hex();
    Json rows = Json::array();
    double sum_o = 0.0;
    double sum_e = 0.0;
    for (const auto& im : images) {
      const auto ho = histogram(im.image);
      const auto he = histogram(encrypt_image(im.image, key, c).display_image);
      rows.push_back(entropy_row_json(im.name, im.image, ho, he));
      sum_o += entropy(ho);
      sum_e += entropy(he);
    }
    table["rows"] = rows;
    if (!images.empty()) {
      const double n = static_cast<double>(images.size());
      table["mean"] = Json{{"entropy_original", round_to(sum_o / n, 4)},
                           {"entropy_encrypted", round_to(sum_e / n, 4)},
                           {"percent_change", round_to(percent_change(sum_o / n, sum_e / n), 2)}};
    }
    ent.push_back(table);
  }
  j["entropy"] = ent;

  if (!o.skip_bench) {
    const auto cmp = compare_variants(ctx.constant_set(), kAllVariants, o.bench_workload, o.bench_runs, 3,
                                      ctx.cfg.seed);
    Json timing;
    timing["machine"] = machine_description();
    Json rows = Json::array();
    for (const auto& r : cmp.reports) rows.push_back(timing_json(r));
    timing["rows"] = rows;
    timing["published_reference_ms"] = Json{{"SF64", 27.5}, {"SF128", 35.0}, {"SF192", 180.0}};
    j["timing"] = timing;
  }
  ctx.emit(j);
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kBadHex: return kExitBadHex;
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kInvalidConstants: return kExitConstants;
    default: return kExitInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure Force block cipher family: encryption, avalanche, image statistics and timing."};
  app.name("sfcli");
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Environment:\n  SF_CONSTANTS  constant-set file used when --constants is absent\n\n"
      "Exit status: 0 ok, 2 usage, 3 bad hex, 4 missing/unreadable file, 5 invalid constants,\n"
      "6 malformed input or mismatched widths/versions.");

  Context ctx{RunConfig{}, in, out, std::nullopt};
  auto& cfg = ctx.cfg;
  auto* variant_opt = app.add_option("--variant", cfg.variant, "sf64 | sf128 | sf192")->capture_default_str();
  app.add_option("--constants", cfg.constants_path, "constant-set file (default: built-in sf-const-v1)")
      ->envname("SF_CONSTANTS");
  app.add_option("--seed", cfg.seed, "RNG seed recorded in every report")->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv | table");
  app.add_option("--out", cfg.out_path, "write the result here instead of stdout");
  app.set_version_flag("--version", std::string("sfcli ") + kToolVersion);

  KeyOpts key_opts;
  auto* expand = app.add_subcommand("expand-key", "derive and print the five round keys");
  expand->add_option("--key", key_opts.key, "key hex ('-' reads stdin)")->required();

  auto* enc = app.add_subcommand("encrypt", "encrypt one block (hex) or a raw file (ECB)");
  enc->add_option("--key", key_opts.key, "key hex ('-' reads stdin)")->required();
  enc->add_option("--pt", key_opts.block, "plaintext hex ('-' reads stdin)");
  enc->add_option("--in", key_opts.in_file, "raw input file, whole blocks");

  auto* dec = app.add_subcommand("decrypt", "decrypt one block (hex) or a raw file (ECB)");
  dec->add_option("--key", key_opts.key, "key hex ('-' reads stdin)")->required();
  dec->add_option("--ct", key_opts.block, "ciphertext hex ('-' reads stdin)");
  dec->add_option("--in", key_opts.in_file, "raw input file, whole blocks");

  AvalancheOpts aval_opts;
  auto* aval = app.add_subcommand("avalanche", "single-bit-flip avalanche suite");
  aval->add_option("--preset", aval_opts.preset, "'paper' replays the four published table rows");
  aval->add_option("--trials", aval_opts.trials, "seeded random trials when no preset")->capture_default_str();

  ImageOpts img_opts;
  auto* ienc = app.add_subcommand("image-encrypt", "encrypt a PGM/PPM image blockwise");
  ienc->add_option("--image", img_opts.image, "input P5/P6 image")->required()->check(CLI::ExistingFile);
  ienc->add_option("--key", img_opts.key, "key hex")->required();
  ienc->add_option("--display", img_opts.display, "write the ciphertext as a P5 image");
  ienc->add_option("--blob", img_opts.blob, "write the full ciphertext blob");

  auto* idec = app.add_subcommand("image-decrypt", "restore an image from a ciphertext blob");
  idec->add_option("--blob", img_opts.blob, "ciphertext blob")->required()->check(CLI::ExistingFile);
  idec->add_option("--key", img_opts.key, "key hex")->required();
  idec->add_option("--decrypted", img_opts.decrypted, "output P5 image")->required();

  auto* ent = app.add_subcommand("entropy", "intensity entropy, optionally before and after encryption");
  ent->add_option("--image", img_opts.image, "input P5/P6 image")->required()->check(CLI::ExistingFile);
  ent->add_option("--key", img_opts.key, "also encrypt with this key");

  auto* hist = app.add_subcommand("histogram", "256-bin intensity histogram as intensity,count");
  hist->add_option("--image", img_opts.image, "input P5/P6 image")->required()->check(CLI::ExistingFile);
  hist->add_option("--key", img_opts.key, "histogram the encrypted image instead");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "time bulk encryption per variant");
  bench->add_option("--variants", bench_opts.variants, "variants to time (default all)")->delimiter(',');
  bench->add_option("--workload", bench_opts.workload, "bytes per pass")->capture_default_str();
  bench->add_option("--runs", bench_opts.runs, "timed passes")->capture_default_str();
  bench->add_option("--warmup", bench_opts.warmup, "untimed passes")->capture_default_str();
  bench->add_flag("--key-expansion", bench_opts.key_expansion, "also time key expansion");

  ReportOpts rep_opts;
  auto* report = app.add_subcommand("paper-report", "avalanche, entropy and timing tables as one JSON document");
  report->add_option("--images", rep_opts.images, "directory of P5/P6 test images");
  report->add_option("--trials", rep_opts.trials, "seeded random avalanche trials per variant")->capture_default_str();
  report->add_option("--bench-workload", rep_opts.bench_workload, "bytes per timed pass")->capture_default_str();
  report->add_option("--bench-runs", rep_opts.bench_runs, "timed passes per variant")->capture_default_str();
  report->add_flag("--skip-bench", rep_opts.skip_bench, "omit the timing section");

  std::vector<std::string> argv_store = {"sfcli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "sfcli: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!cfg.format.empty()) require_format(cfg.format);
    ctx.variant();
    ctx.constant_set();
    if (expand->parsed()) cmd_expand_key(ctx, key_opts);
    else if (enc->parsed()) cmd_block(ctx, key_opts, false);
    else if (dec->parsed()) cmd_block(ctx, key_opts, true);
    else if (aval->parsed()) cmd_avalanche(ctx, aval_opts);
    else if (ienc->parsed()) cmd_image_encrypt(ctx, img_opts);
    else if (idec->parsed()) cmd_image_decrypt(ctx, img_opts, variant_opt->count() > 0);
    else if (ent->parsed()) cmd_entropy(ctx, img_opts);
    else if (hist->parsed()) cmd_histogram(ctx, img_opts);
    else if (bench->parsed()) cmd_bench(ctx, bench_opts);
    else if (report->parsed()) cmd_paper_report(ctx, rep_opts);
  } catch (const UsageError& e) {
    err << "sfcli: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "sfcli: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "sfcli: internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace sf::cli
