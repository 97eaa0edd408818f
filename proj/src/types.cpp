#include "sf/types.hpp"

#include <cctype>

namespace sf {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kSF64: return "SF64";
    case Variant::kSF128: return "SF128";
    case Variant::kSF192: return "SF192";
  }
  return "SF?";
}

Variant parse_variant(std::string_view text) {
  std::string norm;
  for (const char c : text) norm.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (norm.rfind("SF-", 0) == 0) norm.erase(2, 1);
  if (norm.rfind("SF", 0) != 0) norm = "SF" + norm;
  for (const Variant v : kAllVariants) {
    if (norm == variant_name(v)) return v;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown variant '" + std::string(text) + "' (expected sf64, sf128 or sf192)");
}

}  // namespace sf
