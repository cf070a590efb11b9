#pragma once

#include <stdexcept>
#include <string>

namespace dimlab {

// Subset / partition enumeration would exceed the configured cardinality cap.
struct CapExceeded : std::length_error {
  using std::length_error::length_error;
};

// A stated precondition (e.g. k(emptyset) = 1) does not hold.
struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Attempt to build or extend a configuration with coincident points.
struct DuplicatePoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (z <= 0, C <= sigma/m, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A certified truncation tail was requested but no growth bound is declared.
struct TruncationUnsound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Estimator invoked with too few replicas to produce a standard error.
struct InsufficientReplicas : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid run configuration (CLI / config file layer).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dimlab
