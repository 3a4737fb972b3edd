#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace reconlab {

/// Malformed arguments: out-of-range vertices, overlapping edit sets, empty
/// probability boxes and the like.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed one of the enumeration caps. `required` carries
/// the size that would have been needed (0 when unknown).
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required = 0)
      : std::runtime_error(what), required_(required) {}

  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// Malformed text input. `line` is 1-based, 0 when not line oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reconlab
