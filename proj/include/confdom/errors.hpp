#pragma once

#include <stdexcept>
#include <string>

namespace confdom {

/// Base class for all precondition violations thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The cone apex X = 0 (or a numerically-zero vector) was passed where a
/// nonzero vector is required.
struct ApexError : Error {
  using Error::Error;
};

/// normalize_to_sigma was asked to normalize a null vector.
struct OnConeError : Error {
  using Error::Error;
};

/// A cone operation received a vector with Q(X) != 0.
struct NotOnConeError : Error {
  using Error::Error;
};

/// A chart operation received a vector with Q(X) != +-1.
struct NotOnSigmaError : Error {
  using Error::Error;
};

/// The point sits on the X^5 = X^6 locus, which the half-space chart
/// does not cover.
struct AtDomainInfinityError : Error {
  using Error::Error;
};

struct InvalidLambdaError : Error {
  using Error::Error;
};

/// Finite-difference step too large for the point (would cross lambda = 0).
struct StepTooLargeError : Error {
  using Error::Error;
};

/// Bad integration parameters (non-positive step, range, or floor).
struct InvalidStepError : Error {
  using Error::Error;
};

struct TooFewSamplesError : Error {
  using Error::Error;
};

/// A SigmaMinus-only operation received a SigmaPlus point (or vice versa).
struct WrongDomainError : Error {
  using Error::Error;
};

/// A closed-form family was sampled outside its parameter domain.
struct ParamDomainError : Error {
  using Error::Error;
};

struct InvalidSpecError : Error {
  using Error::Error;
};

}  // namespace confdom
