#include "vsalisp/error.hpp"

namespace vsalisp {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kInvalidModuli: return "invalid-moduli";
    case ErrorKind::kMalformedResidues: return "malformed-residues";
    case ErrorKind::kUndecodable: return "undecodable";
    case ErrorKind::kNoInverse: return "no-inverse";
    case ErrorKind::kEmptyCodebook: return "empty-codebook";
    case ErrorKind::kEmptyMemory: return "empty-memory";
    case ErrorKind::kNoMatch: return "no-match";
    case ErrorKind::kDanglingPointer: return "dangling-pointer";
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kUnboundSymbol: return "unbound-symbol";
    case ErrorKind::kNotApplicable: return "not-applicable";
    case ErrorKind::kArity: return "arity";
    case ErrorKind::kType: return "type";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kInvalidConfig: return "invalid-config";
  }
  return "unknown";
}

std::string Error::formatted() const {
  std::string out = "ERROR:";
  out += kind_name(kind_);
  out += ": ";
  out += what();
  return out;
}

}  // namespace vsalisp
