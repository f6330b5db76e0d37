#pragma once

#include <stdexcept>
#include <string>

namespace equilab {

/// Raised when an input violates a documented precondition. `field()` names
/// the offending parameter so front ends can report it verbatim.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace equilab
