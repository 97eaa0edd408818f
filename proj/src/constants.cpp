#include "sf/constants.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace sf {

namespace {

bool is_permutation_of_range(const std::vector<std::uint16_t>& table, std::size_t n) {
  if (table.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const auto v : table) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Fisher-Yates over the identity, driven by the PCG multiplier LCG. The data
// file header documents the same procedure.
std::vector<std::uint16_t> shuffled_identity(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint16_t> p(n);
  std::iota(p.begin(), p.end(), std::uint16_t{0});
  std::uint64_t x = seed;
  for (std::size_t i = n - 1; i > 0; --i) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    const std::size_t j = static_cast<std::size_t>((x >> 33) % (i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

CipherConstants make_canonical(Variant v) {
  static const std::vector<Sbox> kSboxes = {
      Sbox{0x3, 0x8, 0xF, 0x1, 0xA, 0x6, 0x5, 0xB, 0xE, 0xD, 0x4, 0x2, 0x7, 0x0, 0x9, 0xC},
      Sbox{0xF, 0xC, 0x2, 0x7, 0x9, 0x0, 0x5, 0xA, 0x1, 0xB, 0xE, 0x8, 0x6, 0xD, 0x3, 0x4},
      Sbox{0x8, 0x6, 0x7, 0x9, 0x3, 0xC, 0xA, 0xF, 0xD, 0x1, 0xE, 0x4, 0x0, 0xB, 0x5, 0x2},
      Sbox{0x0, 0xF, 0xB, 0x8, 0xC, 0x9, 0x6, 0x3, 0xD, 0x1, 0x2, 0x4, 0xA, 0x7, 0x5, 0xE},
  };
  CipherConstants c;
  c.version = "sf-const-v1";
  c.variant = v;
  c.sboxes = kSboxes;
  c.fm = BitMatrix4{{{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}}};
  const std::size_t bits = block_bits(v);
  c.p_table = shuffled_identity(bits, bits);
  c.t_table = shuffled_identity(bits / 4, bits + 1);
  switch (v) {
    case Variant::kSF64: c.ls_amounts = {3, 7, 11, 19, 29}; break;
    case Variant::kSF128: c.ls_amounts = {5, 13, 23, 37, 53}; break;
    case Variant::kSF192: c.ls_amounts = {7, 19, 37, 61, 89}; break;
  }
  return c;
}

std::string lower_name(Variant v) {
  std::string s(variant_name(v));
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

struct Entry {
  std::vector<std::string> values;
  std::size_t line = 0;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

const Entry& require(const std::map<std::string, Entry>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorCode::kParse, "constant file is missing '" + key + "'");
  return it->second;
}

unsigned long parse_number(const std::string& tok, int base, const std::string& key,
                           std::size_t line) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &used, base);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) {
    throw Error(ErrorCode::kParse, "bad value '" + tok + "' for '" + key + "' on line " +
                                       std::to_string(line));
  }
  return v;
}

template <class T>
std::vector<T> numbers(const std::map<std::string, Entry>& kv, const std::string& key, int base) {
  const Entry& e = require(kv, key);
  std::vector<T> out;
  out.reserve(e.values.size());
  for (const auto& tok : e.values) out.push_back(static_cast<T>(parse_number(tok, base, key, e.line)));
  return out;
}

template <class Range>
std::string join(const Range& r, bool hex = false) {
  std::ostringstream out;
  bool first = true;
  for (const auto v : r) {
    if (!first) out << ' ';
    first = false;
    if (hex) {
      out << std::uppercase << std::hex << static_cast<unsigned>(v) << std::dec;
    } else {
      out << static_cast<unsigned>(v);
    }
  }
  return out.str();
}

}  // namespace

int gf2_determinant(const BitMatrix4& input) {
  BitMatrix4 m = input;
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    while (pivot < 4 && (m[pivot][col] & 1U) == 0) ++pivot;
    if (pivot == 4) return 0;
    std::swap(m[pivot], m[col]);
    for (std::size_t r = 0; r < 4; ++r) {
      if (r != col && (m[r][col] & 1U)) {
        for (std::size_t k = 0; k < 4; ++k) m[r][k] ^= m[col][k];
      }
    }
  }
  return 1;
}

ValidationReport validate_constants(const CipherConstants& c) {
  ValidationReport report;
  auto& v = report.violations;
  const std::size_t bits = block_bits(c.variant);

  if (c.sboxes.empty()) v.push_back("no S-boxes");
  for (std::size_t k = 0; k < c.sboxes.size(); ++k) {
    std::array<bool, 16> seen{};
    bool bijective = true;
    for (const auto out : c.sboxes[k]) {
      if (out > 15 || seen[out]) {
        bijective = false;
        break;
      }
      seen[out] = true;
    }
    if (!bijective) v.push_back("sbox." + std::to_string(k) + " is not a bijection on 0..15");
  }
  if (!is_permutation_of_range(c.p_table, bits)) {
    v.push_back("p_table is not a permutation of 0.." + std::to_string(bits - 1));
  }
  if (!is_permutation_of_range(c.t_table, bits / 4)) {
    v.push_back("t_table is not a permutation of 0.." + std::to_string(bits / 4 - 1));
  }
  bool binary = true;
  for (const auto& row : c.fm)
    for (const auto e : row) binary = binary && e <= 1;
  if (!binary) {
    v.push_back("fm has entries outside {0,1}");
  } else if (gf2_determinant(c.fm) != 1) {
    v.push_back("fm not invertible over GF(2)");
  }
  if (c.ls_amounts.size() != kRounds) {
    v.push_back("ls_amounts needs " + std::to_string(kRounds) + " entries, has " +
                std::to_string(c.ls_amounts.size()));
  }
  for (std::size_t i = 0; i < c.ls_amounts.size(); ++i) {
    if (c.ls_amounts[i] < 1 || c.ls_amounts[i] >= bits) {
      v.push_back("ls_amounts[" + std::to_string(i) + "] = " + std::to_string(c.ls_amounts[i]) +
                  " outside 1.." + std::to_string(bits - 1));
    }
  }
  if (c.version.empty()) v.push_back("empty version string");
  return report;
}

ConstantSet::ConstantSet(std::array<CipherConstants, 3> per_variant)
    : per_variant_(std::move(per_variant)) {
  for (std::size_t i = 0; i < per_variant_.size(); ++i) {
    if (per_variant_[i].variant != kAllVariants[i]) {
      throw Error(ErrorCode::kInvalidArgument, "constant sets must be ordered SF64, SF128, SF192");
    }
  }
}

const CipherConstants& ConstantSet::get(Variant v) const {
  return per_variant_[static_cast<std::size_t>(v) - 1];
}

ValidationReport ConstantSet::validate() const {
  ValidationReport all;
  for (const auto& c : per_variant_) {
    for (const auto& msg : validate_constants(c).violations) {
      all.violations.push_back(std::string(variant_name(c.variant)) + ": " + msg);
    }
  }
  return all;
}

ConstantSet ConstantSet::parse(std::string_view text) {
  std::map<std::string, Entry> kv;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (split_ws(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + " has no '='");
    }
    const auto key_tokens = split_ws(line.substr(0, eq));
    if (key_tokens.size() != 1) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + " has a malformed key");
    }
    if (kv.contains(key_tokens[0])) {
      throw Error(ErrorCode::kParse,
                  "duplicate key '" + key_tokens[0] + "' on line " + std::to_string(line_no));
    }
    kv[key_tokens[0]] = Entry{split_ws(line.substr(eq + 1)), line_no};
  }

  const auto& version_entry = require(kv, "version");
  if (version_entry.values.size() != 1) {
    throw Error(ErrorCode::kParse, "version must be a single token");
  }

  std::vector<Sbox> sboxes;
  for (std::size_t k = 0; kv.contains("sbox." + std::to_string(k)); ++k) {
    const std::string key = "sbox." + std::to_string(k);
    const auto vals = numbers<unsigned>(kv, key, 16);
    if (vals.size() != 16) {
      throw Error(ErrorCode::kParse, key + " needs 16 entries, has " + std::to_string(vals.size()));
    }
    Sbox s{};
    for (std::size_t i = 0; i < 16; ++i) s[i] = static_cast<std::uint8_t>(vals[i]);
    sboxes.push_back(s);
  }
  if (sboxes.empty()) throw Error(ErrorCode::kParse, "constant file defines no sbox.0");

  BitMatrix4 fm{};
  for (std::size_t r = 0; r < 4; ++r) {
    const std::string key = "fm." + std::to_string(r);
    const auto row = numbers<unsigned>(kv, key, 10);
    if (row.size() != 4) throw Error(ErrorCode::kParse, key + " needs 4 entries");
    for (std::size_t k = 0; k < 4; ++k) fm[r][k] = static_cast<std::uint8_t>(row[k]);
  }

  std::array<CipherConstants, 3> sets;
  for (std::size_t i = 0; i < 3; ++i) {
    const Variant v = kAllVariants[i];
    const std::string prefix = lower_name(v) + ".";
    CipherConstants& c = sets[i];
    c.version = version_entry.values[0];
    c.variant = v;
    c.sboxes = sboxes;
    c.fm = fm;
    c.p_table = numbers<std::uint16_t>(kv, prefix + "p_table", 10);
    c.t_table = numbers<std::uint16_t>(kv, prefix + "t_table", 10);
    c.ls_amounts = numbers<unsigned>(kv, prefix + "ls_amounts", 10);
  }
  return ConstantSet(std::move(sets));
}

ConstantSet ConstantSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open constant file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ConstantSet::serialize() const {
  std::ostringstream out;
  const auto& base = per_variant_[0];
  out << "version = " << base.version << "\n\n";
  for (std::size_t k = 0; k < base.sboxes.size(); ++k) {
    out << "sbox." << k << " = " << join(base.sboxes[k], true) << '\n';
  }
  out << '\n';
  for (std::size_t r = 0; r < 4; ++r) out << "fm." << r << " = " << join(base.fm[r]) << '\n';
  for (const auto& c : per_variant_) {
    const std::string prefix = lower_name(c.variant);
    out << '\n';
    out << prefix << ".p_table = " << join(c.p_table) << '\n';
    out << prefix << ".t_table = " << join(c.t_table) << '\n';
    out << prefix << ".ls_amounts = " << join(c.ls_amounts) << '\n';
  }
  return out.str();
}

const ConstantSet& canonical_constants() {
  static const ConstantSet kSet({make_canonical(Variant::kSF64), make_canonical(Variant::kSF128),
                                 make_canonical(Variant::kSF192)});
  return kSet;
}

std::uint64_t version_hash(std::string_view version) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : version) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace sf
