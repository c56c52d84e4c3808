#pragma once

#include <stdexcept>
#include <string>

namespace ionlink {

// Bad input values or shapes (unknown labels, non-Hermitian input, ...).
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical breakdown (trace drift, negativity, non-convergence).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Fock-space truncation discards too much weight.
class truncation_error : public numerical_error {
 public:
  explicit truncation_error(const std::string& msg) : numerical_error(msg) {}
};

// Malformed scenario files; carries the offending key.
class config_error : public std::runtime_error {
 public:
  config_error(const std::string& key, const std::string& msg)
      : std::runtime_error("config key '" + key + "': " + msg), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace ionlink
