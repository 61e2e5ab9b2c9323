#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsi {

/// Bad user input: malformed files, invalid configuration, unmet preconditions.
/// The CLI maps this to exit status 1; anything else escaping a stage is status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// InputError that points at a line of an input file.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lsi
