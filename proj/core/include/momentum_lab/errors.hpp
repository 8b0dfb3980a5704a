#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

/// A norm or integral does not converge for the requested parameters.
struct DivergenceError : std::domain_error {
  explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

/// A ratio whose denominator vanishes identically.
struct UndefinedRatioError : std::domain_error {
  explicit UndefinedRatioError(const std::string& what) : std::domain_error(what) {}
};

/// The high-frequency operator is not a contraction at the given cutoff.
struct NotContractiveError : std::runtime_error {
  explicit NotContractiveError(const std::string& what) : std::runtime_error(what) {}
};

/// No eigenvalue inside the requested bracket.
struct NoEigenvalueError : std::runtime_error {
  explicit NoEigenvalueError(const std::string& what) : std::runtime_error(what) {}
};

/// An iteration failed to reach its tolerance within the allowed steps.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed experiment configuration (unknown experiment, key, or value).
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mlab
