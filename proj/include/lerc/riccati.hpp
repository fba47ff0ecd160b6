#pragma once

#include <string>
#include <variant>

#include "lerc/core.hpp"

namespace lerc {

/// A model with its stationary H-infinity Riccati solution and observer gains.
struct SolvedModel {
  Model model;
  double gamma = 0.0;
  double P = 0.0;      ///< P = (a^2 / X + gamma^-2)^-1
  double X = 0.0;      ///< P + gamma^2 c^2 - 1
  double a_hat = 0.0;  ///< a P / X
  double g_hat = 0.0;  ///< gamma^2 a c / X

  /// gamma can only bound the gain when P >= 1.
  bool feasible_gain() const { return P >= 1.0; }
};

/// No positive stationary solution for this (model, gamma).
struct Infeasible {
  std::string reason;
};

using RiccatiResult = std::variant<SolvedModel, Infeasible>;

/// Solves P = (a^2 (P + gamma^2 c^2 - 1)^-1 + gamma^-2)^-1 through its
/// quadratic form, keeping the larger root. Throws ContractError if gamma is
/// not positive or the refined root misses the fixed point.
RiccatiResult solve_riccati(const Model& model, double gamma);

/// Convenience for callers that require feasibility; throws ContractError
/// with the infeasibility reason otherwise.
SolvedModel solve_riccati_or_throw(const Model& model, double gamma);

/// P - (a^2 / (P + gamma^2 c^2 - 1) + gamma^-2)^-1. Throws ContractError when
/// the denominator P + gamma^2 c^2 - 1 is within 1e-14 of zero.
double riccati_residual(double P, const Model& model, double gamma);

}  // namespace lerc
