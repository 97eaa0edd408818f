#include "sf/error.hpp"

namespace sf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kWidthMismatch: return "width mismatch";
    case ErrorCode::kOutOfRange: return "out of range";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kBadHex: return "bad hex";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInvalidConstants: return "invalid constants";
    case ErrorCode::kVersionMismatch: return "version mismatch";
  }
  return "unknown error";
}

}  // namespace sf
