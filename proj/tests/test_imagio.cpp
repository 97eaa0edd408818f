#include <doctest.h>

#include <cmath>

#include "sf/analysis.hpp"
#include "sf/imagio.hpp"
#include "test_support.hpp"

using namespace sf;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::vector<std::uint8_t> payload) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

GrayImage random_image(std::size_t w, std::size_t h, std::uint64_t& state) {
  return GrayImage{w, h, testing::random_bytes(w * h, state)};
}

const CipherConstants& canon(Variant v) { return canonical_constants().get(v); }

}  // namespace

TEST_CASE("PGM and PPM loading") {
  const auto img = load_image(bytes_of("P5 2 2 255\n", {0, 128, 255, 7}));
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 128, 255, 7});

  const auto rgb = load_image(bytes_of("P6\n# comment line\n3 1\n255\n",
                                       {255, 255, 255, 0, 0, 0, 255, 0, 0}));
  CHECK(rgb.pixels == std::vector<std::uint8_t>{255, 0, 76});
  CHECK(bt601_luma(0, 255, 0) == 150);
  CHECK(bt601_luma(0, 0, 255) == 29);
}

TEST_CASE("PNM errors name the defect and offset") {
  auto expect_parse_error = [](const std::vector<std::uint8_t>& bytes, const std::string& needle) {
    try {
      load_image(bytes);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  expect_parse_error(bytes_of("P2 2 2 255\n", {}), "magic");
  expect_parse_error(bytes_of("P5 2 2 65535\n", {0, 0, 0, 0}), "maxval 65535");
  expect_parse_error(bytes_of("P5 2 2 255\n", {1, 2, 3}), "truncated");
  expect_parse_error(bytes_of("P5 2 x 255\n", {}), "expected height");
  expect_parse_error(bytes_of("P5 2", {}), "truncated");
  expect_parse_error(bytes_of("P5 2 2 255\n", {}), "offset 11");
}

TEST_CASE("PGM serialization round trip") {
  std::uint64_t state = 3;
  for (std::size_t w = 1; w <= 9; w += 2) {
    for (std::size_t h = 1; h <= 9; h += 4) {
      const auto img = random_image(w, h, state);
      CHECK(load_image(encode_pgm(img)) == img);
    }
  }
}

TEST_CASE("image encryption shapes") {
  const auto key64 = CipherKey::from_hex(Variant::kSF64, "0123456789ABCDEF");
  SUBCASE("256x256 needs no padding under SF-64") {
    const auto img = testing::natural_image(256, 256, 1);
    const auto a = encrypt_image(img, key64, canon(Variant::kSF64));
    CHECK(a.ciphertext_blob.size() == 65536);
    CHECK(a.ciphertext_blob.size() / 8 == 8192);
    CHECK(a.pad_length == 0);
    CHECK(a.display_image.width == 256);
    CHECK(a.display_image.height == 256);
  }
  SUBCASE("3x3 pads to two blocks") {
    const GrayImage img{3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}};
    const auto a = encrypt_image(img, key64, canon(Variant::kSF64));
    CHECK(a.pad_length == 7);
    CHECK(a.ciphertext_blob.size() == 16);
    const auto back = decrypt_image(a, key64, canon(Variant::kSF64));
    CHECK(back.pixels.size() == 9);
    CHECK(back == img);
  }
  SUBCASE("empty image") {
    CHECK_THROWS_AS(encrypt_image(GrayImage{}, key64, canon(Variant::kSF64)), Error);
  }
}

TEST_CASE("image round trip across sizes and variants") {
  std::uint64_t state = 9;
  for (const Variant v : kAllVariants) {
    const CipherKey key(v, testing::random_bytes(block_bytes(v), state));
    for (std::size_t side = 1; side <= 64; side += 7) {
      const auto img = random_image(side, side + 1, state);
      const auto a = encrypt_image(img, key, canon(v));
      CHECK(a.ciphertext_blob.size() % block_bytes(v) == 0);
      CHECK(a.pad_length < block_bytes(v));
      CHECK(decrypt_image(a, key, canon(v)) == img);
      CHECK(decrypt_image(parse_blob(serialize_blob(a)), key, canon(v)) == img);
    }
  }
}

TEST_CASE("wrong key scrambles the image") {
  std::uint64_t state = 77;
  const Variant v = Variant::kSF128;
  const auto img = random_image(64, 64, state);
  for (int run = 0; run < 20; ++run) {
    const CipherKey key(v, testing::random_bytes(16, state));
    const CipherKey wrong(v, testing::random_bytes(16, state));
    const auto out = decrypt_image(encrypt_image(img, key, canon(v)), wrong, canon(v));
    const double frac = static_cast<double>(hamming_distance(out.pixels, img.pixels)) /
                        static_cast<double>(img.pixels.size() * 8);
    CHECK(frac >= 0.45);
  }
}

TEST_CASE("ECB maps equal blocks to equal ciphertext") {
  const GrayImage img{16, 2, std::vector<std::uint8_t>(32, 0x5A)};
  const auto key = CipherKey::from_hex(Variant::kSF128, "000A4A6DE8DB6667000A4A6DE8DB6667");
  const auto a = encrypt_image(img, key, canon(Variant::kSF128));
  CHECK(std::equal(a.ciphertext_blob.begin(), a.ciphertext_blob.begin() + 16,
                   a.ciphertext_blob.begin() + 16));
}

TEST_CASE("constant version is enforced") {
  const auto key = CipherKey::from_hex(Variant::kSF64, "FFFFFFFFFFFFFFFF");
  auto a = encrypt_image(GrayImage{2, 2, {1, 2, 3, 4}}, key, canon(Variant::kSF64));
  auto other = canon(Variant::kSF64);
  other.version = "sf-const-v2";
  try {
    decrypt_image(a, key, other);
    FAIL("expected version mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVersionMismatch);
  }
}

TEST_CASE("blob header layout") {
  const auto key = CipherKey::from_hex(Variant::kSF192, std::string(48, 'A'));
  const auto a = encrypt_image(GrayImage{5, 3, std::vector<std::uint8_t>(15, 9)}, key,
                               canon(Variant::kSF192));
  const auto blob = serialize_blob(a);
  REQUIRE(blob.size() == kBlobHeaderSize + 24);
  CHECK(std::string(blob.begin(), blob.begin() + 4) == "SFCB");
  CHECK(blob[4] == 3);
  CHECK(blob[5] == 9);
  CHECK(blob[6] == 0);
  CHECK(blob[7] == 5);
  std::uint64_t h = 0;
  for (int i = 8; i < 16; ++i) h = (h << 8) | blob[i];
  CHECK(h == version_hash("sf-const-v1"));

  auto bad = blob;
  bad[0] = 'X';
  CHECK_THROWS_AS(parse_blob(bad), Error);
  bad = blob;
  bad[4] = 9;
  CHECK_THROWS_AS(parse_blob(bad), Error);
  bad = blob;
  bad.pop_back();
  CHECK_THROWS_AS(parse_blob(bad), Error);
}

TEST_CASE("encrypted natural images look uniform") {
  for (const Variant v : kAllVariants) {
    const auto key = CipherKey::from_hex(v, std::string(block_bits(v) / 4, 'F'));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto img = testing::natural_image(64 * seed, 64 + 32 * seed, seed);
      const auto a = encrypt_image(img, key, canon(v));
      const auto ho = histogram(img);
      const auto he = histogram(a.display_image);
      CHECK(chi_square_uniform(he) < chi_square_uniform(ho));
      CHECK(entropy(he) > entropy(ho));
    }
  }
  const auto big = testing::natural_image(256, 256, 11);
  const auto key128 = CipherKey::from_hex(Variant::kSF128, std::string(32, 'F'));
  CHECK(entropy(histogram(encrypt_image(big, key128, canon(Variant::kSF128)).display_image)) >= 7.9);
}
