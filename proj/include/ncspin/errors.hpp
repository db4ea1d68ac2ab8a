#pragma once

#include <stdexcept>
#include <string>

namespace ncspin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters handed to a constructor or operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A state or field point outside the region where the model is defined:
/// negative radicand under P^0, the Coulomb core, a null spin vector.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// {T3, T4} (or the denominator of the coefficient `a`) is numerically zero,
/// so the second-class pair cannot be inverted.
class DegenerateConstraints : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncspin
