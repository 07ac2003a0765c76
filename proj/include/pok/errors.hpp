#pragma once

#include <stdexcept>
#include <string>

namespace pok {

// Base class for numerical failures. Argument/precondition violations are
// reported with std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class NoSignChange : public Error {
 public:
  using Error::Error;
};

class MaxIterationsExceeded : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

// Wraps a failure raised while processing one order k of a sweep.
class SweepError : public Error {
 public:
  SweepError(int k, const std::string& what)
      : Error("k=" + std::to_string(k) + ": " + what), k_(k) {}
  int k() const noexcept { return k_; }

 private:
  int k_;
};

}  // namespace pok
