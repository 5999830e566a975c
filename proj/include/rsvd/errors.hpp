#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsvd {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An input matrix (or an intermediate block) lost column rank where full
// rank was required, e.g. a QR panel with a negligible diagonal entry.
class RankDeficientError : public Error {
public:
  using Error::Error;
};

// An iterative kernel exhausted its sweep budget without meeting its
// convergence criterion.
class NoConvergenceError : public Error {
public:
  using Error::Error;
};

// A matrix that must have orthonormal columns failed the Gram check.
class NotOrthonormalError : public Error {
public:
  using Error::Error;
};

// Incompatible or out-of-range dimensions (rows, cols, k, p).
class DimensionError : public Error {
public:
  using Error::Error;
};

// The oversampling margin is too small: sqrt(p) - sqrt(k) - alpha <= 0.
class InvalidAlphaError : public Error {
public:
  using Error::Error;
};

// A gap-dependent budget was requested for a spectrum with no usable gap
// (sigma_k <= sigma_{p+1} or sigma_{p+1} <= 0).
class NoGapError : public Error {
public:
  using Error::Error;
};

// A filtered block overflowed to non-finite values.
class OverflowError : public Error {
public:
  using Error::Error;
};

// The sketch M*X vanished, so no Krylov basis can be built.
class EmptyBasisError : public Error {
public:
  using Error::Error;
};

// A scalar parameter violated a type invariant (epsilon, gamma, ratio, ...).
class InvalidParamError : public Error {
public:
  using Error::Error;
};

// An internal numerical postcondition failed; indicates a defect, not bad
// user input.
class NumericalError : public Error {
public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number of the offense.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Structurally valid file in a dialect this reader does not accept.
class UnsupportedFormatError : public Error {
public:
  using Error::Error;
};

// Invalid experiment configuration; carries the offending field name.
class ConfigError : public Error {
public:
  ConfigError(const std::string& field, const std::string& msg)
      : Error("config field '" + field + "': " + msg), field_(field) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

// File could not be opened, read, or written.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace rsvd
