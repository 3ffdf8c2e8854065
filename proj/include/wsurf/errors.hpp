#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsurf {

/// Base of every failure raised by the library. The CLI maps subclasses
/// onto process exit codes via exit_code().
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 4; }
};

// ---- expression layer -----------------------------------------------------

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  int exit_code() const override { return 2; }

 private:
  std::size_t offset_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : ParseError("syntax error: " + what, offset) {}
};

class UnknownFunction : public ParseError {
 public:
  UnknownFunction(const std::string& name, std::size_t offset)
      : ParseError("unknown function '" + name + "'", offset), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NonIntegerExponent : public ParseError {
 public:
  explicit NonIntegerExponent(std::size_t offset)
      : ParseError("exponent of '^' must be an integer literal", offset) {}
};

class DomainError : public Error {
 public:
  DomainError(const std::string& subexpr, std::complex<double> t)
      : Error("domain error in '" + subexpr + "' at t=(" + std::to_string(t.real()) + "," +
              std::to_string(t.imag()) + ")"),
        t_(t) {}
  std::complex<double> t() const { return t_; }

 private:
  std::complex<double> t_;
};

// ---- algebra / representations --------------------------------------------

class NotIsothermal : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class CanonicalBranchError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

class NeedsLogBranch : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

class UnsupportedDirection : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class SingularRecovery : public Error {
 public:
  using Error::Error;
};

class ConditionViolated : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// ---- canonical coordinates ------------------------------------------------

class NotCanonical : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 5; }
};

class DegeneratePoint : public Error {
 public:
  DegeneratePoint(std::complex<double> t, int multiplicity)
      : Error("degenerate point at t=(" + std::to_string(t.real()) + "," +
              std::to_string(t.imag()) + "), estimated order " + std::to_string(multiplicity)),
        t_(t),
        multiplicity_(multiplicity) {}
  std::complex<double> t() const { return t_; }
  int multiplicity() const { return multiplicity_; }
  int exit_code() const override { return 3; }

 private:
  std::complex<double> t_;
  int multiplicity_;
};

class NewtonDivergence : public Error {
 public:
  using Error::Error;
};

// ---- motions --------------------------------------------------------------

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class NotCongruent : public Error {
 public:
  NotCongruent(const std::string& what, double residual)
      : Error(what + " (max residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }
  int exit_code() const override { return 5; }

 private:
  double residual_;
};

// ---- files and configuration ----------------------------------------------

/// Malformed surface file, unknown key, bad flag value or unreadable file.
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

}  // namespace wsurf
