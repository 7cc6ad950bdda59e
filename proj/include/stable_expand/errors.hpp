#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stable_expand {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance document. `field` is empty when the failure is syntactic
// (the message then carries nlohmann's line/column context).
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<std::string> violations_;
};

// Budget cannot be spent, flow cannot be routed, or an expansion lies outside
// the feasible set.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace stable_expand
