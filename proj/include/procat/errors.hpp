#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace procat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition or structural invariant does not hold for the
/// input (non-commuting square, non-functorial diagram, unknown element...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A construction needs an element strictly above (or a bound for) what the
/// finite truncation of a cofinite poset contains.
class TruncationExhausted : public Error {
 public:
  using Error::Error;
};

/// Two pre-morphisms (or two representatives) are not equal in the colimit
/// as far as the truncation can tell.
class NotColimEqual : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration exceeded its configured element budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. `location` is a JSON-pointer-like path.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)), detail_(what) {}

  const std::string& location() const noexcept { return location_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string location_;
  std::string detail_;
};

}  // namespace procat
