#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgd {

// Base of every error the library throws on bad input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or value problems with caller-supplied data (dimension mismatch, NaN).
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid settings: unknown loss kind, non-positive rates, unreachable IR.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownMethod : public ConfigError {
 public:
  explicit UnknownMethod(const std::string& id)
      : ConfigError("unknown method '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// Malformed file content; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class EmptyStream : public Error {
 public:
  using Error::Error;
};

// A dynamic-IR schedule asked for more instances of a class than exist.
class InfeasibleSchedule : public Error {
 public:
  InfeasibleSchedule(const std::string& what, std::size_t segment)
      : Error(what), segment_(segment) {}
  std::size_t segment() const noexcept { return segment_; }

 private:
  std::size_t segment_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgd
