#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mqsym {

enum class ErrorCode {
  DuplicateName,
  DuplicateLabel,
  ValueCountMismatch,
  EmptySpectrum,
  UnknownComponent,
  DuplicateComponent,
  TooFewComponents,
  UnknownObservable,
  IndexOutOfRange,
  RegistryFrozen,
  MissingDimension,
  MissingEigenvalues,
  ParseError,
  DimensionMismatch,
  NotUnitary,
  NotRealizable,
  SyntaxError,
  UnboundVariable,
  UnknownLabel,
  TypeError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Position of a construct in DSL source text. Lines and columns are 1-based;
/// length counts bytes.
struct Span {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<Span> span = std::nullopt)
      : std::runtime_error(message), code_(code), span_(span) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Span>& span() const noexcept { return span_; }

 private:
  ErrorCode code_;
  std::optional<Span> span_;
};

}  // namespace mqsym
