#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slowlight {

enum class ErrorKind {
  ContractViolation,
  InvalidData,
  Truncation,
  Aliasing,
  OutOfRange,
  Unavailable,
  DegenerateInput,
  Format,
  InvalidBands,
  DivisionBlowup,
  AmbiguousWidth,
  Unidentifiable,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Half-level crossings of a multimodal trace; the caller decides which pair
// defines the width.
class AmbiguousWidthError : public Error {
public:
  AmbiguousWidthError(const std::string& what, std::vector<double> crossings)
    : Error(ErrorKind::AmbiguousWidth, what), crossings_(std::move(crossings)) {}

  const std::vector<double>& crossings() const noexcept { return crossings_; }

private:
  std::vector<double> crossings_;
};

// Configuration / file parse failure anchored to a 1-based line number
// (0 when the whole file is at fault).
class ConfigError : public Error {
public:
  ConfigError(int line, const std::string& what)
    : Error(ErrorKind::Config, what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace slowlight
