#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vdd {

/// Precondition on an argument value was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what a dense routine is allowed to allocate.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed VDD document. `field()` names the offending key when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Invalid or inconsistent run configuration. `key()` names the config key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Raised from inside an optimization loop; carries epoch and parameter label.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(long epoch, std::string label, const std::string& what)
      : std::runtime_error(what + " (epoch " + std::to_string(epoch) +
                           ", parameter " + label + ")"),
        epoch_(epoch),
        label_(std::move(label)) {}

  long epoch() const noexcept { return epoch_; }
  const std::string& label() const noexcept { return label_; }

 private:
  long epoch_;
  std::string label_;
};

}  // namespace vdd
