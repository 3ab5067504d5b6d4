#pragma once

#include <stdexcept>
#include <string>

namespace mcpqe {

/// Bad user input: unreadable files, malformed configs, out-of-range settings.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime numerical failure: NaN/Inf propagation, walker population death,
/// persistent projected-energy divergence.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver hit its iteration cap without meeting tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mcpqe
