#pragma once

#include <stdexcept>
#include <string>

namespace qkmi {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument values: non-positive variance, empty grids, bad enums.
struct ParameterError : Error {
  using Error::Error;
};

// Resource guard violations, e.g. a statevector above the qubit cap.
struct CapacityError : Error {
  using Error::Error;
};

// Dimension mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

// Symmetric factorization hit a non-positive pivot even after one jitter
// retry; pivot_index is the offending column.
struct ConditioningError : Error {
  ConditioningError(const std::string& msg, int pivot)
      : Error(msg), pivot_index(pivot) {}
  int pivot_index = -1;
};

}  // namespace qkmi
