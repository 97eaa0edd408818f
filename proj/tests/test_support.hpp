#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sf/imagio.hpp"
#include "sf/types.hpp"

namespace sf::testing {

inline std::filesystem::path data_dir() { return SF_DATA_DIR; }

struct FixtureRow {
  std::vector<std::string> fields;
};

// Comma-separated fixture rows with '#' comments.
inline std::vector<FixtureRow> read_fixture(const std::string& name) {
  std::ifstream in(data_dir() / name);
  std::vector<FixtureRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    FixtureRow row;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) {
      f.erase(0, f.find_first_not_of(' '));
      f.erase(f.find_last_not_of(' ') + 1);
      row.fields.push_back(f);
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t& state) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    b = static_cast<std::uint8_t>(state >> 56);
  }
  return out;
}

// Smooth shading plus mild texture: a stand-in for a photograph.
inline GrayImage natural_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GrayImage img{w, h, {}};
  img.pixels.reserve(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double v = 110.0 + 50.0 * std::sin(static_cast<double>(x) / 9.0) +
                       35.0 * std::cos(static_cast<double>(y) / 13.0) +
                       static_cast<double>(rng() % 13) - 6.0;
      img.pixels.push_back(static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0)));
    }
  }
  return img;
}

}  // namespace sf::testing
