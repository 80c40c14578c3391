#pragma once

#include <stdexcept>
#include <string>

namespace vex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input: dimension mismatches, unparsable values,
/// broken invariants on construction.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// The operation is not implemented for this class of sets or mappings.
class UnsupportedClass : public Error {
 public:
  using Error::Error;
};

/// The exact answer exists but is not a rational number.
class NonRationalValue : public Error {
 public:
  using Error::Error;
};

}  // namespace vex
