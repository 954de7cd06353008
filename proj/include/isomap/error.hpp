#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isomap {

enum class ErrorCode {
  DegenerateBasis,
  DegenerateComplement,
  ZeroVector,
  NotSymmetric,
  ZeroVariance,
  KTooLarge,
  InvalidConfig,
  NonFinite,
  BadDim,
  BadCount,
  BadMagic,
  TruncatedFile,
  DimensionMismatch,
  RaggedRows,
  NonNumericCell,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace isomap
