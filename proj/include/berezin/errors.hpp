#pragma once

#include <stdexcept>
#include <string>

namespace berezin {

/// Invalid build-time configuration (dimensions, grid parameters, run config).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A point lies outside the admissible region of the disk model.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called with structurally incompatible arguments.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix failed the invertibility gate; the message names the
/// singular-value ratio that triggered it.
struct SingularityError : std::runtime_error {
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// Two evaluation paths of the same quantity disagreed beyond tolerance.
struct NumericsError : std::runtime_error {
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure; the message names the path.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace berezin
