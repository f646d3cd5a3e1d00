// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace halfplane {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial, rational, matroid or certificate text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different ground sets.
class GroundSetMismatch : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (non-multiaffine, repeated index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Contracting a loop or deleting a coloop.
class DegenerateMinorError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfplane
