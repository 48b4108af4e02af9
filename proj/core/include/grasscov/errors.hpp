#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace grasscov {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field construction.
struct NotAPrimePower : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};

// Linear algebra and argument validation.
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidArgs : Error {
  using Error::Error;
};

// Enumeration and search budgets. `refused` is the exact count that was
// requested and declined (as a decimal string, since counts can exceed 64 bits).
struct BudgetExceeded : Error {
  std::string refused;
  BudgetExceeded(const std::string& what, std::string refused_count)
      : Error(what), refused(std::move(refused_count)) {}
};

// Code-level checks.
struct TooFewCodewords : Error {
  using Error::Error;
};
struct NotSimple : Error {
  using Error::Error;
};

// Constructions.
struct NotDivisible : Error {
  using Error::Error;
};

// Network simulation.
struct CodeTooSmall : Error {
  using Error::Error;
};
struct CodeInvalid : Error {
  std::vector<int> receiver;  // offending node subset
  int span_dim = 0;
  CodeInvalid(const std::string& what, std::vector<int> rx, int dim)
      : Error(what), receiver(std::move(rx)), span_dim(dim) {}
};
struct SingularSystem : Error {
  using Error::Error;
};
struct WrongCount : Error {
  using Error::Error;
};
struct WrongLength : Error {
  using Error::Error;
};

// Hamming-side bridges.
struct ZeroColumn : Error {
  using Error::Error;
};
struct RankDeficient : Error {
  using Error::Error;
};
struct IndependenceViolated : Error {
  std::vector<int> columns;
  IndependenceViolated(const std::string& what, std::vector<int> cols)
      : Error(what), columns(std::move(cols)) {}
};

// Results store.
struct MissingExactValue : Error {
  using Error::Error;
};
struct StoreConflict : Error {
  using Error::Error;
};

}  // namespace grasscov
