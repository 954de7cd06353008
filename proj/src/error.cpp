#include "isomap/error.hpp"

namespace isomap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::DegenerateComplement: return "DegenerateComplement";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::BadCount: return "BadCount";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace isomap
