#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptri {

enum class ErrorCode {
  DuplicateLabel,
  UnknownLabel,
  CycleDetected,
  CapExceeded,
  PosetMismatch,
  NotADownset,
  // nucleus axioms
  IncompleteTable,
  ImageNotDownset,
  NotInflationary,
  NotIdempotent,
  NotMeetPreserving,
  NotMonotone,
  // topology axioms
  NotASieve,
  MissingMaximal,
  StabilityFail,
  TransitivityFail,
  // text and JSON input
  SyntaxError,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the poset text parser; carries the 1-based line of the fault.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A violated nucleus axiom. `first` and `second` are element masks of the
/// witnessing downsets; `second` is only meaningful for NotMeetPreserving
/// and NotMonotone.
class NucleusViolation : public Error {
 public:
  NucleusViolation(ErrorCode code, std::uint32_t first, std::uint32_t second,
                   const std::string& message)
      : Error(code, message), first_(first), second_(second) {}

  std::uint32_t first() const noexcept { return first_; }
  std::uint32_t second() const noexcept { return second_; }

 private:
  std::uint32_t first_;
  std::uint32_t second_;
};

/// A violated topology axiom with its witness: the point p, a second point
/// q (stability), the offending sieve S and, for transitivity, the sieve R.
class TopologyViolation : public Error {
 public:
  TopologyViolation(ErrorCode code, std::size_t point, std::size_t other_point,
                    std::uint32_t sieve, std::uint32_t other_sieve,
                    const std::string& message)
      : Error(code, message),
        point_(point),
        other_point_(other_point),
        sieve_(sieve),
        other_sieve_(other_sieve) {}

  std::size_t point() const noexcept { return point_; }
  std::size_t other_point() const noexcept { return other_point_; }
  std::uint32_t sieve() const noexcept { return sieve_; }
  std::uint32_t other_sieve() const noexcept { return other_sieve_; }

 private:
  std::size_t point_;
  std::size_t other_point_;
  std::uint32_t sieve_;
  std::uint32_t other_sieve_;
};

}  // namespace ptri
