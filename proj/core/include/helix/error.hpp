#pragma once

#include <stdexcept>
#include <string>

namespace helix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input. `field` is a dotted path into the offending
/// configuration or argument (may be empty).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A positivity, nondegeneracy or admissibility check did not pass.
class CertificationError : public Error {
 public:
  CertificationError(std::string check, const std::string& what)
      : Error(check + ": " + what), check_(std::move(check)) {}

  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

/// Discrete solve failed (singular mode, factorization or iteration failure).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace helix
