#pragma once

#include <stdexcept>
#include <string>

namespace resmote {

/// Raised for every contract violation in the library (bad input data,
/// invalid configuration, precondition failures). The message is a single
/// line suitable for machine parsing.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV or JSON content that cannot be interpreted.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace resmote
