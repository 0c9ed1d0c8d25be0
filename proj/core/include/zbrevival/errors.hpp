#pragma once

#include <stdexcept>
#include <string>

namespace zbr {

// Every numerical contract violation derives from NumericalError so callers
// (the CLI in particular) can tell them apart from usage errors.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unphysical quantum numbers, e.g. the negative branch at n = 0.
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Gaussian tail mass beyond the Fock cutoff exceeds tolerance.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An operation was handed inputs outside the regime it is derived for.
class ContractError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// T_CL and T_R diverge in the free limit (omega = 0).
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SamplingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CoverageError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace zbr
