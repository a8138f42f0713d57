#pragma once

#include <stdexcept>
#include <string>

namespace seasonlv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class StepBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public Error {
 public:
  using Error::Error;
};

class Inadmissible : public Error {
 public:
  using Error::Error;
};

class NewtonDivergence : public Error {
 public:
  using Error::Error;
};

class NonHyperbolic : public Error {
 public:
  using Error::Error;
};

class Degenerate : public Error {
 public:
  using Error::Error;
};

class UnknownSignature : public Error {
 public:
  using Error::Error;
};

class WrongClass : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario or sample-box file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace seasonlv
