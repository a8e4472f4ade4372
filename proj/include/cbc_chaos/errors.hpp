// Error types shared across the library.
//
// Plain std exceptions cover validation failures; the custom types below
// carry the trajectory index that triggered the failure, which callers
// need for reporting.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cbc_chaos {

// Thrown when a trajectory lands on (or is certified to reach) a breakpoint
// of the piecewise-linear interval map. `index` is the offending step.
class ExceptionalPointError : public std::runtime_error {
public:
  ExceptionalPointError(std::uint64_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::uint64_t index() const { return index_; }

private:
  std::uint64_t index_;
};

// Thrown when a derivative is zero or undefined at an iterate.
class DerivativeError : public std::runtime_error {
public:
  DerivativeError(std::uint64_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::uint64_t index() const { return index_; }

private:
  std::uint64_t index_;
};

// Thrown when an estimator ends with every step excluded.
class DegenerateMeasurementError : public std::runtime_error {
public:
  explicit DegenerateMeasurementError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace cbc_chaos
