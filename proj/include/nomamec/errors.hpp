#pragma once

#include <stdexcept>
#include <string>

namespace nomamec {

/// Invalid parameters or configuration (bad indices, out-of-range β, ...).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the range where a closed form is evaluated reliably
/// (population above the alternating-sum cap).
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Argument outside a function's mathematical domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A closed form produced a non-finite summand or a value outside the
/// probability tolerance window. Carries the offending summand indices
/// when known (-1 otherwise).
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, int p = -1, int l = -1)
      : std::runtime_error(what), p_(p), l_(l) {}

  int p_index() const noexcept { return p_; }
  int l_index() const noexcept { return l_; }

private:
  int p_;
  int l_;
};

}  // namespace nomamec
