#pragma once

#include <stdexcept>
#include <string>

namespace lerc {

/// Violated precondition or internal invariant.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The gain bound cannot hold: some model has P < 1, so the past cost is
/// convex in the measurement and unbounded above.
class GainInfeasible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No certified gain bound exists in the searched range.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadratic program is not concave on its constraint set.
class Unbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate linear system.
class Singular : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw ContractError(what);
}

}  // namespace lerc
