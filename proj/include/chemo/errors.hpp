#pragma once

#include <stdexcept>
#include <string>

namespace chemo {

// Base class for every error the library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent configuration input (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

// Requested (t,x) outside a tabulated coefficient's coverage.
struct EvaluationOutOfRange : Error {
  using Error::Error;
};

// Initial-data spec that cannot produce a valid state.
struct InvalidSpec : Error {
  using Error::Error;
};

// Condition H1 checked without any user-supplied regularity constants.
struct EmptyConstantTable : Error {
  using Error::Error;
};

// A bound was requested outside the parameter region where it is defined.
struct HypothesisViolated : Error {
  using Error::Error;
};

struct NotConstantCoefficients : Error {
  using Error::Error;
};

struct DegenerateDenominator : Error {
  using Error::Error;
};

// Scheme defect: the advanced field went negative beyond roundoff.
struct PositivityViolation : Error {
  using Error::Error;
};

struct NonFiniteValue : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

// Run or refinement request above the configured resource budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Too few trailing snapshots to classify persistence.
struct InsufficientTail : Error {
  using Error::Error;
};

}  // namespace chemo
