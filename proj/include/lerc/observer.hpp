#pragma once

#include <vector>

#include "lerc/core.hpp"
#include "lerc/riccati.hpp"

namespace lerc {

/// Absolute slack on the sign test l <= 0; l starts at exactly 0 and
/// certified trajectories may graze it.
inline constexpr double kPastCostSlack = 1e-9;

/// One H-infinity observer with its past cost. Starts at x_hat = 0, l = 0.
struct ObserverState {
  SolvedModel solved;
  double x_hat = 0.0;
  double l = 0.0;
  int t = 0;

  explicit ObserverState(const SolvedModel& s) : solved(s) {}
};

/// Advances
///   x_hat(t+1) = a_hat x_hat(t) + b u(t) + g_hat y(t)
///   l(t+1)     = l(t) - P x_hat^2 - gamma^2 y^2 + (P x_hat + gamma^2 c y)^2 / X.
///
/// The estimate is summed as (a_hat x_hat + g_hat y) + b u so that a control
/// u = -b (a_hat x_hat + g_hat y) lands on exactly zero.
ObserverState observer_step(const ObserverState& state, double u, double y);

/// l(t+1) for measurement y without committing the step. Independent of u.
/// Throws GainInfeasible when P < 1 (the supremum over y is unbounded).
double alpha_closed_form(const ObserverState& state, double y);

/// The observer bank: one observer per model, all on the same clock.
struct InformationState {
  std::vector<ObserverState> bank;
  int t = 0;

  /// Solves every model's Riccati equation at gamma. Throws ContractError if
  /// any model has no stationary solution.
  static InformationState make(const ModelSet& models, double gamma);
};

InformationState bank_step(const InformationState& info, double u, double y);

/// True iff every member has l <= kPastCostSlack.
bool finite_gain_ok(const InformationState& info);

}  // namespace lerc
