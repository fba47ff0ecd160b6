#pragma once

#include <span>
#include <string>

#include "lerc/core.hpp"
#include "lerc/verify/disturbance.hpp"

namespace lerc::verify {

/// Closed loop of the plant (a, b_true, 1) under the dead-beat certainty
/// equivalence controller tuned at gamma. The controller sees only y.
///
/// w covers 0..T and v covers 0..T+1; the loop produces one more
/// measurement than control. alpha(t) is recorded for t = 0..T with the
/// controller's P. Throws ContractError unless P > 1 at (a, gamma).
SimulationTrace simulate_with_signals(double a, double b_true, double gamma,
                                      double x0, std::span<const double> w,
                                      std::span<const double> v,
                                      std::string prng = "");

/// Realizes both plans and runs simulate_with_signals. Adversarial plans are
/// rejected; feed adversarial_gain's signals to simulate_with_signals instead.
SimulationTrace simulate_closed_loop(double a, double b_true, double gamma,
                                     double x0, const DisturbancePlan& plan_w,
                                     const DisturbancePlan& plan_v, int T);

}  // namespace lerc::verify
