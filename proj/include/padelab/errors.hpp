#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace padelab {

class QComplex;

// Base of every error raised by the library. Validation-type errors map to
// exit code 2 in the CLI, NumericalError and its subclasses to exit code 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

class OutOfRange : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class UnsupportedInput : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
  ConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Thrown by the exact nullspace routine when the nullspace is not one
// dimensional. Carries the exact rank and a basis of the nullspace.
class RankDeficiency : public Error {
public:
  RankDeficiency(std::size_t rank, std::vector<std::vector<QComplex>> basis);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<std::vector<QComplex>>& basis() const noexcept { return basis_; }

private:
  std::size_t rank_;
  std::vector<std::vector<QComplex>> basis_;
};

// Exact-mode Padé with a nullspace of dimension > 1.
class NonUniqueDenominator : public Error {
public:
  explicit NonUniqueDenominator(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }

private:
  std::size_t dimension_;
};

}  // namespace padelab
