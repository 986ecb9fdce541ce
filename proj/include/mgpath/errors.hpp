#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgpath {

/// A parameter violates its domain. `field()` names the offending input.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A path produced a non-representable weight or variance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::size_t path_index, const std::string& what)
      : std::runtime_error("path " + std::to_string(path_index) + ": " + what),
        path_index_(path_index) {}

  std::size_t path_index() const noexcept { return path_index_; }

 private:
  std::size_t path_index_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mgpath
