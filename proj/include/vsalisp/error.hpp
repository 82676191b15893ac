#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vsalisp {

enum class ErrorKind {
  kInvalidDimension,
  kDimensionMismatch,
  kInvalidModuli,
  kMalformedResidues,
  kUndecodable,
  kNoInverse,
  kEmptyCodebook,
  kEmptyMemory,
  kNoMatch,
  kDanglingPointer,
  kSyntax,
  kUnboundSymbol,
  kNotApplicable,
  kArity,
  kType,
  kIo,
  kInvalidConfig,
};

// Stable, machine-parseable name used in "ERROR:<kind>:" lines.
std::string_view kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  // "ERROR:<kind>: <message>"
  [[nodiscard]] std::string formatted() const;

 private:
  ErrorKind kind_;
};

// Reader failure carrying the byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::kSyntax, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace vsalisp
