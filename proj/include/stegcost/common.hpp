#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stegcost {

using Bytes = std::vector<std::uint8_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Covert payload does not fit the carrier, or the carrier cannot hold the
// requested structure.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed wire data or non-serializable content.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// Cost entries with mismatched dimensions or units.
class UnitError : public Error {
 public:
  using Error::Error;
};

// A detector or estimator was given an empty or degenerate sample.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

std::string bytes_to_hex(const Bytes& data);
Bytes hex_to_bytes(const std::string& hex);

}  // namespace stegcost
