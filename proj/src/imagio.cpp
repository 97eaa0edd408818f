#include "sf/imagio.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

namespace sf {

namespace {

constexpr std::array<std::uint8_t, 4> kBlobMagic = {'S', 'F', 'C', 'B'};

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  // Skips whitespace and '#' comments, then reads a decimal field.
  std::size_t number(const char* field) {
    skip_space();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > (1U << 24)) fail(std::string(field) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size()) fail(std::string("header truncated before ") + field, pos_);
      fail(std::string("expected ") + field, pos_);
    }
    return v;
  }

  // Exactly one whitespace octet separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail("expected one whitespace octet before pixel data", pos_);
    }
    ++pos_;
  }

  [[noreturn]] static void fail(const std::string& what, std::size_t at) {
    throw Error(ErrorCode::kParse, "malformed PNM: " + what + " at byte offset " + std::to_string(at));
  }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

std::uint8_t bt601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  // round((299 R + 587 G + 114 B) / 1000) in integers
  return static_cast<std::uint8_t>((299U * r + 587U * g + 114U * b + 500U) / 1000U);
}

GrayImage load_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    HeaderReader::fail("expected magic P5 or P6", 0);
  }
  const bool colour = bytes[1] == '6';
  HeaderReader reader(bytes);
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval_at = reader.offset();
  const std::size_t maxval = reader.number("maxval");
  if (maxval != 255) {
    HeaderReader::fail("maxval " + std::to_string(maxval) + " (only 255 is supported)", maxval_at);
  }
  reader.single_space();
  if (width == 0 || height == 0) HeaderReader::fail("zero image dimension", maxval_at);

  const std::size_t channels = colour ? 3 : 1;
  const std::size_t need = width * height * channels;
  const std::size_t start = reader.offset();
  if (bytes.size() - start < need) {
    throw Error(ErrorCode::kParse, "truncated PNM pixel data: need " + std::to_string(need) +
                                       " octets from byte offset " + std::to_string(start) +
                                       ", have " + std::to_string(bytes.size() - start));
  }

  GrayImage img{width, height, std::vector<std::uint8_t>(width * height)};
  const auto raster = bytes.subspan(start, need);
  if (colour) {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      img.pixels[i] = bt601_luma(raster[3 * i], raster[3 * i + 1], raster[3 * i + 2]);
    }
  } else {
    std::copy(raster.begin(), raster.end(), img.pixels.begin());
  }
  return img;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

GrayImage load_image_file(const std::filesystem::path& path) { return load_image(read_file(path)); }

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  write_file(path, encode_pgm(image));
}

EncryptedImageArtifact encrypt_image(const GrayImage& image, const CipherKey& key,
                                     const CipherConstants& constants) {
  if (image.empty() || image.width == 0 || image.height == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot encrypt an empty image");
  }
  if (image.pixels.size() != image.width * image.height) {
    throw Error(ErrorCode::kInvalidArgument, "pixel count does not match width x height");
  }
  const std::size_t bb = block_bytes(key.variant());
  const std::size_t n = image.pixels.size();
  EncryptedImageArtifact a;
  a.variant = key.variant();
  a.constant_version = constants.version;
  a.constant_version_hash = version_hash(constants.version);
  a.pad_length = (bb - n % bb) % bb;
  a.ciphertext_blob.assign(image.pixels.begin(), image.pixels.end());
  a.ciphertext_blob.resize(n + a.pad_length, 0);
  encrypt_blocks(a.ciphertext_blob, a.ciphertext_blob, derive_round_keys(key, constants), constants);
  a.display_image = GrayImage{image.width, image.height,
                              {a.ciphertext_blob.begin(), a.ciphertext_blob.begin() + static_cast<std::ptrdiff_t>(n)}};
  return a;
}

GrayImage decrypt_image(const EncryptedImageArtifact& a, const CipherKey& key,
                        const CipherConstants& constants) {
  if (a.constant_version_hash != version_hash(constants.version)) {
    throw Error(ErrorCode::kVersionMismatch,
                "artifact was produced under a different constant set than '" + constants.version + "'");
  }
  if (a.variant != key.variant()) {
    throw Error(ErrorCode::kWidthMismatch, "artifact is " + std::string(variant_name(a.variant)) +
                                               ", key is " + std::string(variant_name(key.variant())));
  }
  const std::size_t bb = block_bytes(a.variant);
  if (a.ciphertext_blob.size() % bb != 0 || a.pad_length >= bb ||
      a.ciphertext_blob.size() < a.pad_length) {
    throw Error(ErrorCode::kInvalidArgument, "ciphertext length inconsistent with block size");
  }
  const std::size_t n = a.ciphertext_blob.size() - a.pad_length;
  const std::size_t width = a.display_image.width;
  if (width == 0 || n % width != 0) {
    throw Error(ErrorCode::kInvalidArgument, "ciphertext length inconsistent with image width");
  }
  std::vector<std::uint8_t> plain(a.ciphertext_blob.size());
  decrypt_blocks(a.ciphertext_blob, plain, derive_round_keys(key, constants), constants);
  plain.resize(n);
  return GrayImage{width, n / width, std::move(plain)};
}

std::vector<std::uint8_t> serialize_blob(const EncryptedImageArtifact& a) {
  if (a.display_image.width > 0xFFFF) {
    throw Error(ErrorCode::kOutOfRange, "blob header stores widths up to 65535");
  }
  std::vector<std::uint8_t> out(kBlobHeaderSize);
  std::copy(kBlobMagic.begin(), kBlobMagic.end(), out.begin());
  out[4] = static_cast<std::uint8_t>(a.variant);
  out[5] = static_cast<std::uint8_t>(a.pad_length);
  out[6] = static_cast<std::uint8_t>(a.display_image.width >> 8);
  out[7] = static_cast<std::uint8_t>(a.display_image.width);
  for (std::size_t i = 0; i < 8; ++i) {
    out[8 + i] = static_cast<std::uint8_t>(a.constant_version_hash >> (56 - 8 * i));
  }
  out.insert(out.end(), a.ciphertext_blob.begin(), a.ciphertext_blob.end());
  return out;
}

EncryptedImageArtifact parse_blob(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kBlobHeaderSize || !std::equal(kBlobMagic.begin(), kBlobMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::kParse, "not a ciphertext blob (bad magic at byte offset 0)");
  }
  if (bytes[4] < 1 || bytes[4] > 3) {
    throw Error(ErrorCode::kParse, "unknown variant id " + std::to_string(bytes[4]) + " at byte offset 4");
  }
  EncryptedImageArtifact a;
  a.variant = static_cast<Variant>(bytes[4]);
  a.pad_length = bytes[5];
  const std::size_t width = (std::size_t{bytes[6]} << 8) | bytes[7];
  for (std::size_t i = 0; i < 8; ++i) a.constant_version_hash = (a.constant_version_hash << 8) | bytes[8 + i];
  a.ciphertext_blob.assign(bytes.begin() + kBlobHeaderSize, bytes.end());

  const std::size_t bb = block_bytes(a.variant);
  if (a.ciphertext_blob.empty() || a.ciphertext_blob.size() % bb != 0 || a.pad_length >= bb) {
    throw Error(ErrorCode::kParse, "blob payload of " + std::to_string(a.ciphertext_blob.size()) +
                                       " octets does not fit " + std::string(variant_name(a.variant)));
  }
  const std::size_t n = a.ciphertext_blob.size() - a.pad_length;
  if (width == 0 || n % width != 0) {
    throw Error(ErrorCode::kParse, "blob width " + std::to_string(width) + " does not divide " +
                                       std::to_string(n) + " pixels (byte offset 6)");
  }
  a.display_image = GrayImage{width, n / width,
                              {a.ciphertext_blob.begin(), a.ciphertext_blob.begin() + static_cast<std::ptrdiff_t>(n)}};
  return a;
}

}  // namespace sf
