#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "sf/analysis.hpp"
#include "sf/cipher.hpp"
#include "sf/imagio.hpp"

namespace py = pybind11;

namespace {

const sf::CipherConstants& canon(const std::string& variant) {
  return sf::canonical_constants().get(sf::parse_variant(variant));
}

sf::RoundKeySchedule schedule_for(const std::string& variant, const std::string& key_hex) {
  const auto& c = canon(variant);
  return sf::derive_round_keys(sf::CipherKey::from_hex(c.variant, key_hex), c);
}

std::string run_hex(const std::string& variant, const std::string& key_hex, const std::string& block_hex,
                    bool decrypt) {
  const auto& c = canon(variant);
  const auto s = schedule_for(variant, key_hex);
  const auto in = sf::Block::from_hex(c.variant, block_hex);
  return (decrypt ? sf::decrypt_block(in, s, c) : sf::encrypt_block(in, s, c)).hex();
}

py::bytes run_bytes(const std::string& variant, const std::string& key_hex, const py::bytes& data,
                    bool decrypt) {
  const auto& c = canon(variant);
  const auto s = schedule_for(variant, key_hex);
  std::string buf = data;
  const std::span<std::uint8_t> view(reinterpret_cast<std::uint8_t*>(buf.data()), buf.size());
  if (decrypt) {
    sf::decrypt_blocks(view, view, s, c);
  } else {
    sf::encrypt_blocks(view, view, s, c);
  }
  return py::bytes(buf);
}

sf::Histogram256 to_histogram(const std::vector<std::uint64_t>& counts) {
  if (counts.size() != 256) {
    throw sf::Error(sf::ErrorCode::kInvalidArgument,
                    "histogram needs 256 counts, got " + std::to_string(counts.size()));
  }
  sf::Histogram256 h;
  for (std::size_t i = 0; i < 256; ++i) {
    h.counts[i] = counts[i];
    h.total += counts[i];
  }
  return h;
}

std::span<const std::uint8_t> byte_view(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

py::dict trial_dict(const sf::AvalancheTrial& t) {
  py::dict d;
  d["key"] = t.key_hex;
  d["input"] = t.plaintext_hex;
  d["flip_target"] = sf::to_string(t.flip_target);
  d["bit_index"] = t.bit_index;
  d["output_a"] = t.ciphertext_a.hex();
  d["output_b"] = t.ciphertext_b.hex();
  d["ratio"] = t.ratio;
  if (t.printed_ratio) d["printed_ratio"] = *t.printed_ratio;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sfcipher, m) {
  m.doc() = "Secure Force block ciphers and their statistical evaluation";

  py::register_exception<sf::Error>(m, "SfError", PyExc_ValueError);

  m.attr("CONSTANT_VERSION") = sf::canonical_constants().version();
  m.attr("ROUNDS") = sf::kRounds;

  m.def("encrypt", [](const std::string& v, const std::string& k, const std::string& pt) {
    return run_hex(v, k, pt, false);
  }, py::arg("variant"), py::arg("key"), py::arg("plaintext"), "Encrypt one hex block.");
  m.def("decrypt", [](const std::string& v, const std::string& k, const std::string& ct) {
    return run_hex(v, k, ct, true);
  }, py::arg("variant"), py::arg("key"), py::arg("ciphertext"), "Decrypt one hex block.");
  m.def("encrypt_bytes", [](const std::string& v, const std::string& k, const py::bytes& d) {
    return run_bytes(v, k, d, false);
  }, py::arg("variant"), py::arg("key"), py::arg("data"), "ECB over whole blocks.");
  m.def("decrypt_bytes", [](const std::string& v, const std::string& k, const py::bytes& d) {
    return run_bytes(v, k, d, true);
  }, py::arg("variant"), py::arg("key"), py::arg("data"));

  m.def("expand_key", [](const std::string& v, const std::string& k) {
    const auto schedule = schedule_for(v, k);
    std::vector<std::string> out;
    for (const auto& rk : schedule.round_keys()) out.push_back(rk.hex());
    return out;
  }, py::arg("variant"), py::arg("key"), "The five round keys as hex.");

  m.def("avalanche", [](const std::string& v, std::size_t trials, std::uint64_t seed, bool preset) {
    const auto& c = canon(v);
    const auto spec = preset ? sf::TrialSpec::listed(sf::published_preset(c.variant)) : sf::TrialSpec::random(trials);
    const auto r = sf::avalanche_suite(c.variant, c, spec, seed);
    py::list rows;
    for (const auto& t : r.trials) rows.append(trial_dict(t));
    py::dict d;
    d["variant"] = std::string(sf::variant_name(r.variant));
    d["mean_ratio"] = r.mean_ratio;
    d["trial_count"] = r.trial_count;
    d["rng_seed"] = r.rng_seed;
    d["trials"] = rows;
    return d;
  }, py::arg("variant"), py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("preset") = false,
     "Single-bit-flip avalanche suite; preset=True replays the four published rows.");

  m.def("hamming_distance", [](const std::string& a, const std::string& b) {
    return sf::hamming_distance(sf::parse_hex(a), sf::parse_hex(b));
  }, py::arg("a"), py::arg("b"));

  m.def("histogram", [](const py::bytes& pixels) {
    const std::string s = pixels;
    const auto h = sf::histogram(byte_view(s));
    return std::vector<std::uint64_t>(h.counts.begin(), h.counts.end());
  }, py::arg("pixels"));
  m.def("entropy", [](const std::vector<std::uint64_t>& counts) { return sf::entropy(to_histogram(counts)); },
        py::arg("counts"), "Shannon entropy in bits of a 256-bin histogram.");
  m.def("chi_square_uniform",
        [](const std::vector<std::uint64_t>& counts) { return sf::chi_square_uniform(to_histogram(counts)); },
        py::arg("counts"));
  m.def("percent_change", &sf::percent_change, py::arg("original"), py::arg("encrypted"));
  m.def("mean_ratio", [](const std::vector<double>& r) { return sf::mean_ratio(r); }, py::arg("ratios"));

  m.def("load_image", [](const std::string& path) {
    const auto img = sf::load_image_file(path);
    return py::make_tuple(img.width, img.height,
                          py::bytes(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size()));
  }, py::arg("path"), "Read a P5/P6 file as (width, height, gray pixels).");
  m.def("encrypt_image", [](std::size_t w, std::size_t h, const py::bytes& pixels, const std::string& v,
                            const std::string& k) {
    const auto& c = canon(v);
    const std::string s = pixels;
    if (s.size() != w * h) {
      throw sf::Error(sf::ErrorCode::kWidthMismatch, "pixel buffer does not match width * height");
    }
    sf::GrayImage img{w, h, {s.begin(), s.end()}};
    const auto art = sf::encrypt_image(img, sf::CipherKey::from_hex(c.variant, k), c);
    const auto& px = art.display_image.pixels;
    return py::bytes(reinterpret_cast<const char*>(px.data()), px.size());
  }, py::arg("width"), py::arg("height"), py::arg("pixels"), py::arg("variant"), py::arg("key"),
     "Blockwise ECB encryption; returns the display pixels.");
}
