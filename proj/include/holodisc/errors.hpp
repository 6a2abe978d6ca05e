#pragma once

#include <stdexcept>
#include <string>

namespace holodisc {

/// Bad input: a precondition or parameter constraint does not hold.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation ran but could not deliver a trustworthy answer
/// (non-convergence, rank deficiency, unstable truncation).
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lifted disc left the region where the conormal defining functions
/// are valid (a denominator fell below the chart threshold).
class ChartError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace detail
}  // namespace holodisc
