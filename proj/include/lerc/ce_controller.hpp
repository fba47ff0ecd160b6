#pragma once

#include <array>
#include <span>

#include "lerc/observer.hpp"
#include "lerc/riccati.hpp"

namespace lerc {

/// Certainty-equivalence dead-beat controller for the sign pair
/// {(a, +1, 1), (a, -1, 1)}. P does not depend on b, so both observers share
/// (P, X, a_hat, g_hat).
struct CeController {
  double a = 0.0;
  double gamma = 0.0;
  double P = 0.0;
  double X = 0.0;
  double a_hat = 0.0;
  double g_hat = 0.0;

  /// Throws ContractError unless the Riccati solution exists with P > 1.
  static CeController make(double a, double gamma);

  SolvedModel solved(double b) const;
};

/// Observer estimates at t and past costs already advanced with y(t).
struct ObserverPair {
  double x1 = 0.0;
  double xm1 = 0.0;
  double l1_next = 0.0;
  double lm1_next = 0.0;
};

/// u = -(a_hat x1 + g_hat y)  if l1(t+1) >= l-1(t+1), else a_hat x-1 + g_hat y.
/// Ties go to the b = +1 model.
double control(const CeController& ctrl, const ObserverPair& pair, double y);

/// Merged form of the two-observer bank under the dead-beat law: x_hat is
/// the sum of both estimates, and the model with the larger past cost always
/// holds the zero estimate.
struct MergedState {
  double x_hat = 0.0;
  double l1 = 0.0;
  double lm1 = 0.0;
  int t = 0;
};

MergedState merged_step(const CeController& ctrl, const MergedState& s, double y);

/// Two-observer bank closed under the dead-beat law. Bank index 0 holds
/// b = +1, index 1 holds b = -1.
class CeLoop {
 public:
  explicit CeLoop(const CeController& ctrl);

  /// Computes u(t) from y(t), advances the bank with (u, y), returns u.
  double act(double y);

  const CeController& controller() const { return ctrl_; }
  const std::array<ObserverState, 2>& bank() const { return bank_; }
  int time() const { return t_; }

  /// Snapshot of the bank as a general information state.
  InformationState info() const;

 private:
  CeController ctrl_;
  std::array<ObserverState, 2> bank_;
  int t_ = 0;
};

/// Runs CeLoop and merged_step side by side over y and returns the largest
/// deviation in (x_hat1 + x_hat-1, l1, l-1).
double equivalence_check(const CeController& ctrl, std::span<const double> y);

}  // namespace lerc
