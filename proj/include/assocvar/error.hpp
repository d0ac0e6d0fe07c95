#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace assocvar {

/// Machine-readable error categories. The CLI reports these verbatim.
enum class ErrorCode {
  Syntax,
  UnknownGenerator,
  DuplicateGenerator,
  NonPrimeModulus,
  Mismatch,
  Truncation,
  Guard,
  InvalidHom,
  NameClash,
  EmptySet,
  NonHomogeneous,
  Isomorphic,
  NotInvertible,
  RankDeficient,
  NoConvergence,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::string> witness = std::nullopt)
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const std::optional<std::string>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::optional<std::string> witness_;
};

}  // namespace assocvar
