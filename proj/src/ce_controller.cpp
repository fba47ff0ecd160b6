#include "lerc/ce_controller.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lerc/errors.hpp"
#include "lerc/kernels/scalar_math.hpp"

namespace lerc {

CeController CeController::make(double a, double gamma) {
  const SolvedModel s = solve_riccati_or_throw(Model::make(a, 1.0, 1.0), gamma);
  require(s.P > 1.0, fmt::format("CE controller needs P > 1, got P = {} at "
                                 "a = {}, gamma = {}",
                                 s.P, a, gamma));
  return CeController{a, gamma, s.P, s.X, s.a_hat, s.g_hat};
}

SolvedModel CeController::solved(double b) const {
  SolvedModel s;
  s.model = Model{a, b, 1.0};
  s.gamma = gamma;
  s.P = P;
  s.X = X;
  s.a_hat = a_hat;
  s.g_hat = g_hat;
  return s;
}

double control(const CeController& ctrl, const ObserverPair& pair, double y) {
  if (pair.l1_next >= pair.lm1_next) {
    return -(ctrl.a_hat * pair.x1 + ctrl.g_hat * y);
  }
  return ctrl.a_hat * pair.xm1 + ctrl.g_hat * y;
}

MergedState merged_step(const CeController& ctrl, const MergedState& s, double y) {
  using kernels::scalar::past_cost_increment;
  const double g2 = ctrl.gamma * ctrl.gamma;
  const double zero_branch = past_cost_increment(ctrl.P, g2, g2, ctrl.X, 0.0, y);
  const double state_branch =
      past_cost_increment(ctrl.P, g2, g2, ctrl.X, s.x_hat, y);
  MergedState next;
  if (s.l1 >= s.lm1) {
    next.l1 = s.l1 + zero_branch;
    next.lm1 = s.lm1 + state_branch;
  } else {
    next.l1 = s.l1 + state_branch;
    next.lm1 = s.lm1 + zero_branch;
  }
  next.x_hat = kernels::scalar::merged_observer_next(ctrl.a_hat, ctrl.g_hat,
                                                     s.x_hat, y);
  next.t = s.t + 1;
  return next;
}

CeLoop::CeLoop(const CeController& ctrl)
    : ctrl_(ctrl),
      bank_{ObserverState(ctrl.solved(1.0)), ObserverState(ctrl.solved(-1.0))} {}

double CeLoop::act(double y) {
  const ObserverPair pair{bank_[0].x_hat, bank_[1].x_hat,
                          alpha_closed_form(bank_[0], y),
                          alpha_closed_form(bank_[1], y)};
  const double u = control(ctrl_, pair, y);
  for (ObserverState& obs : bank_) obs = observer_step(obs, u, y);
  ++t_;
  return u;
}

InformationState CeLoop::info() const {
  InformationState info;
  info.bank.assign(bank_.begin(), bank_.end());
  info.t = t_;
  return info;
}

double equivalence_check(const CeController& ctrl, std::span<const double> y) {
  CeLoop loop(ctrl);
  MergedState merged;
  double worst = 0.0;
  for (double yt : y) {
    loop.act(yt);
    merged = merged_step(ctrl, merged, yt);
    const auto& bank = loop.bank();
    worst = std::max({worst,
                      std::abs(merged.x_hat - (bank[0].x_hat + bank[1].x_hat)),
                      std::abs(merged.l1 - bank[0].l),
                      std::abs(merged.lm1 - bank[1].l)});
  }
  return worst;
}

}  // namespace lerc
