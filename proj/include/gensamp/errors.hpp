#pragma once

#include <stdexcept>
#include <string>

namespace gensamp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A generalized moment integral does not converge for the given weight.
class DivergentMoment : public Error {
public:
  using Error::Error;
};

/// The sampling interval sits at (or numerically on) a zero of the
/// periodized spectrum, so the lower Riesz bound fails.
class ResonantInterval : public Error {
public:
  using Error::Error;
};

/// The signed denominator of the V_lambda interpolator vanishes.
class PoleDetected : public Error {
public:
  using Error::Error;
};

/// Inverse transform left an imaginary residue above tolerance.
class SymmetryViolation : public Error {
public:
  using Error::Error;
};

/// The reconstruction series tail is not below the truncation budget.
class TruncationBudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Operation requested for a prefilter family that does not support it.
class WrongFamily : public Error {
public:
  using Error::Error;
};

/// Contract violation on the caller's side.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace gensamp
