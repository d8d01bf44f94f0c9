#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nilflow/rational.hpp"

namespace nilflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The lower central series stabilized at a nonzero subspace.
struct NotNilpotentError : Error {
  using Error::Error;
};

/// Operation needs at least one bracket relation.
struct AbelianAlgebraError : Error {
  using Error::Error;
};

/// Every solution of U v = lambda 1 has a nonpositive entry.
struct NoPositiveSolutionError : Error {
  NoPositiveSolutionError(std::string msg, std::vector<RatVec> kernel)
      : Error(std::move(msg)), kernel_basis(std::move(kernel)) {}
  std::vector<RatVec> kernel_basis;
};

/// Certificate does not match the supplied state.
struct NotSolitonError : Error {
  using Error::Error;
};

/// Equilibrium enumeration would exceed the subset budget.
struct SubsetBudgetError : Error {
  using Error::Error;
};

struct UnknownEntryError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

/// Malformed input file; message identifies the offending field.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace nilflow
