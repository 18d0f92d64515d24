#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oddkh {

enum class Errc {
  // parsing
  SyntaxError,
  DuplicateName,
  SelfLoop,
  SamePartEdge,
  DuplicateEdge,
  UnknownVertex,
  IoError,
  // linear algebra
  NotSquare,
  DimensionMismatch,
  TorsionDetected,
  // pu
  NotBipartite,
  StructureMismatch,
  GiveUp,
  // moves
  NotIsolated,
  SignsNotOpposite,
  NeighborhoodMixedParts,
  NotTwins,
  PUViolation,
  BadSigns,
  BadNeighborhood,
  BadDirections,
  NotPU,
  NotInverseConfiguration,
  NotAdjacent,
  MoveFailed,
  // state cube / homology
  SizeBound,
  NotAFace,
  Infeasible,
  // internal consistency failures
  LemmaViolation,
  CompositeMismatch,
  DSquaredNonzero,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library. `code()` identifies the condition,
/// `what()` carries a human-readable description including the offending
/// vertex, line or witness.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for conditions that indicate a bug or a violated theorem rather
  /// than bad input.
  bool is_internal() const noexcept {
    return code_ == Errc::LemmaViolation || code_ == Errc::CompositeMismatch ||
           code_ == Errc::DSquaredNonzero || code_ == Errc::Internal;
  }

 private:
  Errc code_;
};

/// Raised by apply_script: wraps the failure of the move at `index`.
class MoveError : public Error {
 public:
  MoveError(std::size_t index, const Error& cause)
      : Error(Errc::MoveFailed, "move " + std::to_string(index) + ": " + cause.what()),
        index_(index),
        cause_(cause.code()) {}

  std::size_t index() const noexcept { return index_; }
  Errc cause() const noexcept { return cause_; }

 private:
  std::size_t index_;
  Errc cause_;
};

#define ODDKH_ASSERT(cond, msg)                                                 \
  do {                                                                          \
    if (!(cond)) throw ::oddkh::Error(::oddkh::Errc::Internal, (msg));          \
  } while (0)

}  // namespace oddkh
