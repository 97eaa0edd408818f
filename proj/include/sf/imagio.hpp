#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sf/cipher.hpp"

namespace sf {

/// Row-major 8-bit grayscale raster.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  bool empty() const noexcept { return pixels.empty(); }
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Binary PGM (P5) or PPM (P6) with maxval 255. Colour input is reduced with
/// integer BT.601 luma, round(0.299 R + 0.587 G + 0.114 B).
GrayImage load_image(std::span<const std::uint8_t> bytes);
GrayImage load_image_file(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

std::uint8_t bt601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

struct EncryptedImageArtifact {
  GrayImage display_image;                 // first width*height ciphertext octets
  std::vector<std::uint8_t> ciphertext_blob;  // full padded ciphertext
  std::size_t pad_length = 0;
  Variant variant = Variant::kSF64;
  std::string constant_version;  // empty when read back from a blob file
  std::uint64_t constant_version_hash = 0;
};

/// Row-major pixels, zero-padded to whole blocks, each block encrypted on its
/// own (ECB).
EncryptedImageArtifact encrypt_image(const GrayImage& image, const CipherKey& key,
                                     const CipherConstants& constants);
GrayImage decrypt_image(const EncryptedImageArtifact& artifact, const CipherKey& key,
                        const CipherConstants& constants);

// Ciphertext blob file: a 16-octet header followed by the ciphertext.
//
//   offset  size  field
//   0       4     magic "SFCB"
//   4       1     variant id (1 = SF64, 2 = SF128, 3 = SF192)
//   5       1     pad_length
//   6       2     image width, big-endian (height = (payload - pad) / width)
//   8       8     FNV-1a 64 of the constant-set version string, big-endian
inline constexpr std::size_t kBlobHeaderSize = 16;

std::vector<std::uint8_t> serialize_blob(const EncryptedImageArtifact& artifact);
EncryptedImageArtifact parse_blob(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace sf
