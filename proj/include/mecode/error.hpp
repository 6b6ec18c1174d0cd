#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mecode {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-domain or malformed input. field() names the offending parameter
// when there is one.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// No codebook exists under the requested constraints (e.g. 2^n < M).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON / CSV / binary stream contents.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Bitstream cannot be decoded with the given codebook.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& message, std::uint64_t bit_offset)
      : Error(message + " (bit offset " + std::to_string(bit_offset) + ")"),
        bit_offset_(bit_offset) {}

  std::uint64_t bit_offset() const noexcept { return bit_offset_; }

 private:
  std::uint64_t bit_offset_;
};

}  // namespace mecode
