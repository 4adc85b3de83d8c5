#pragma once

#include <stdexcept>
#include <string>

namespace tdrd {

/// Invalid user input: parameters, configs, shapes. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The diffusion matrix fails the parabolicity test where it is required.
/// Maps to CLI exit code 2.
class ParabolicityError : public std::runtime_error {
 public:
  explicit ParabolicityError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A numerical check failed: residual breach, NaN, failed isolation.
/// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace tdrd
