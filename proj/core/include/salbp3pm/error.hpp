#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace salbp3pm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a model invariant (cycle, duration > cycle time, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A caller passed an argument outside the operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A resource guard refused to run (oracle node limit, enumeration cap).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The SAT/MaxSAT backend failed in a way unrelated to the formula.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// An external solver produced output that does not follow the MaxSAT evaluation protocol.
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, std::string raw_output)
      : Error(what), raw_output_(std::move(raw_output)) {}
  const std::string& raw_output() const noexcept { return raw_output_; }

 private:
  std::string raw_output_;
};

/// Misconfiguration, e.g. an external solver binary that cannot be launched.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A decoded model violates the schedule semantics. Indicates an encoder defect.
class EncodingBug : public Error {
 public:
  using Error::Error;
};

}  // namespace salbp3pm
