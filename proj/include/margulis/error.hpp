#pragma once

#include <stdexcept>
#include <string>

namespace margulis {

/// Input outside the hypotheses of the formula being evaluated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested enumeration larger than the configured memory guard.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The bound exists but says nothing (e.g. an index bound below 1).
class VacuousBound : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A postcondition that holds mathematically failed numerically. Always a bug.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace margulis
