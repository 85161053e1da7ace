#pragma once

#include <stdexcept>
#include <string>

namespace liesplit {

// Base class for everything thrown by the library. Commands map these to
// exit code 1; numerical non-convergence of iterative solvers is reported
// through SolveReport::converged instead of being thrown.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

class NotSymmetric : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class NegativeRealEigenvalue : public Error {
public:
  using Error::Error;
};

class SingularCustomJ : public Error {
public:
  using Error::Error;
};

class NotAKroneckerSum : public Error {
public:
  using Error::Error;
};

// Pivot-free elimination hit a vanishing leading principal minor.
class ZeroLeadingMinor : public Error {
public:
  ZeroLeadingMinor(int index, const std::string& what)
      : Error(what), index_(index) {}
  int index() const { return index_; }

private:
  int index_;
};

class NumericallySingular : public Error {
public:
  using Error::Error;
};

class ExistenceViolated : public Error {
public:
  using Error::Error;
};

// A factorization inside a finite-difference sweep failed at step h.
class FactorizationFailed : public Error {
public:
  FactorizationFailed(double step, const std::string& what)
      : Error(what), step_(step) {}
  double step() const { return step_; }

private:
  double step_;
};

class WellDefinednessViolated : public Error {
public:
  using Error::Error;
};

class SingularShift : public Error {
public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
  using Error::Error;
};

class ZeroDiagonal : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(long line, const std::string& what) : Error(what), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

class UnsupportedField : public Error {
public:
  using Error::Error;
};

}  // namespace liesplit
