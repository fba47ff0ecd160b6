#include "lerc/observer.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "lerc/errors.hpp"
#include "lerc/kernels/scalar_math.hpp"

namespace lerc {
namespace {

double next_past_cost(const ObserverState& s, double y) {
  const SolvedModel& m = s.solved;
  const double g2 = m.gamma * m.gamma;
  return s.l + kernels::scalar::past_cost_increment(m.P, g2, g2 * m.model.c,
                                                    m.X, s.x_hat, y);
}

}  // namespace

ObserverState observer_step(const ObserverState& state, double u, double y) {
  const SolvedModel& m = state.solved;
  ObserverState next = state;
  next.x_hat = (m.a_hat * state.x_hat + m.g_hat * y) + m.model.b * u;
  next.l = next_past_cost(state, y);
  next.t = state.t + 1;
  return next;
}

double alpha_closed_form(const ObserverState& state, double y) {
  if (state.solved.P < 1.0) {
    throw GainInfeasible(fmt::format(
        "P = {} < 1: past cost is convex in y and gamma = {} is not a gain bound",
        state.solved.P, state.solved.gamma));
  }
  return next_past_cost(state, y);
}

InformationState InformationState::make(const ModelSet& models, double gamma) {
  InformationState info;
  info.bank.reserve(models.size());
  for (const Model& m : models.models()) {
    info.bank.emplace_back(solve_riccati_or_throw(m, gamma));
  }
  return info;
}

InformationState bank_step(const InformationState& info, double u, double y) {
  InformationState next;
  next.t = info.t + 1;
  next.bank.reserve(info.bank.size());
  for (const ObserverState& s : info.bank) {
    next.bank.push_back(observer_step(s, u, y));
  }
  return next;
}

bool finite_gain_ok(const InformationState& info) {
  return std::all_of(info.bank.begin(), info.bank.end(),
                     [](const ObserverState& s) { return s.l <= kPastCostSlack; });
}

}  // namespace lerc
