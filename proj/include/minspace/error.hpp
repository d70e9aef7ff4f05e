#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minspace {

/// Domain error carrying a short machine-readable code such as
/// "budget-exceeded" or "signature-mismatch".
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("syntax-error", std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace minspace
