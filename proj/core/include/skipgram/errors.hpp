#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skipgram {

// Configuration problem detected before any work starts (bad flag values,
// objective/vocabulary mismatches, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure while reading an input stream. `offset` is the byte position at
// which the failure was detected.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

// Malformed file content. `offset` is the byte position of the offending data.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

// A query token is not present in the vocabulary.
class OovError : public std::runtime_error {
 public:
  explicit OovError(const std::string& token)
      : std::runtime_error("token not in vocabulary: " + token), token_(token) {}

  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

// Training produced a non-finite parameter value.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skipgram
