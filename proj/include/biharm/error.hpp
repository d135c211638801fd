#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biharm {

enum class ErrorCode {
  SyntaxError,
  UnknownFunction,
  UnboundVariable,
  DomainError,
  DimensionMismatch,
  DegenerateMetric,
  DegenerateInducedMetric,
  RankDeficientJacobian,
  OffQuadric,
  DegenerateNormalBundle,
  StencilOutsideDomain,
  NotAHypersurface,
  NotSpacelike,
  NoValidSamples,
  InvalidRange,
  InvalidRadius,
  UnsupportedSignature,
  NotMinimalInput,
  UnknownEntry,
  SpecFileError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error(ErrorCode::SyntaxError,
              "at position " + std::to_string(position) + ", expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace biharm
