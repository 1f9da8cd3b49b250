#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed line-oriented input; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line), message_(what) {}
  std::size_t line() const noexcept { return line_; }
  /// The description without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

/// Malformed XML; `offset()` is the byte offset into the document.
class XmlError : public Error {
 public:
  XmlError(std::size_t offset, const std::string& what)
      : Error("byte " + std::to_string(offset) + ": " + what), offset_(offset), message_(what) {}
  std::size_t offset() const noexcept { return offset_; }
  /// The description without the offset prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  CapacityError(std::size_t required_bytes, const std::string& what)
      : Error(what + " (requires " + std::to_string(required_bytes) + " bytes)"),
        required_bytes_(required_bytes) {}
  std::size_t required_bytes() const noexcept { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

class ExternalMatcherError : public Error {
 public:
  using Error::Error;
};

/// Configuration problem; `key()` names the offending key when known.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace kgforge
