#include "lerc/verify/simulate.hpp"

#include <cmath>

#include "lerc/ce_controller.hpp"
#include "lerc/errors.hpp"

namespace lerc::verify {
namespace {

void record_bank(SimulationTrace& tr, const CeLoop& loop, std::size_t t) {
  for (std::size_t i = 0; i < 2; ++i) {
    tr.x_hat[i][t] = loop.bank()[i].x_hat;
    tr.l[i][t] = loop.bank()[i].l;
  }
}

}  // namespace

SimulationTrace simulate_with_signals(double a, double b_true, double gamma,
                                      double x0, std::span<const double> w,
                                      std::span<const double> v, std::string prng) {
  require(b_true == 1.0 || b_true == -1.0, "simulate: b_true must be +1 or -1");
  require(std::isfinite(x0), "simulate: x0 must be finite");
  require(!w.empty() && v.size() == w.size() + 1,
          "simulate: need |w| = T+1 >= 1 and |v| = T+2");
  const CeController ctrl = CeController::make(a, gamma);
  const std::size_t n = w.size() - 1;

  SimulationTrace tr;
  tr.true_model = Model::make(a, b_true, 1.0);
  tr.gamma = gamma;
  tr.P = ctrl.P;
  tr.prng = std::move(prng);
  tr.w.assign(w.begin(), w.end());
  tr.v.assign(v.begin(), v.end());
  tr.x.assign(n + 2, 0.0);
  tr.y.assign(n + 2, 0.0);
  tr.u.assign(n + 1, 0.0);
  tr.x_hat.assign(2, std::vector<double>(n + 2, 0.0));
  tr.l.assign(2, std::vector<double>(n + 2, 0.0));

  const Model& m = tr.true_model;
  CeLoop loop(ctrl);
  tr.x[0] = x0;
  for (std::size_t t = 0; t <= n; ++t) {
    tr.y[t] = m.c * tr.x[t] + tr.v[t];
    record_bank(tr, loop, t);
    tr.u[t] = loop.act(tr.y[t]);
    tr.x[t + 1] = m.a * tr.x[t] + m.b * tr.u[t] + tr.w[t];
  }
  tr.y[n + 1] = m.c * tr.x[n + 1] + tr.v[n + 1];
  record_bank(tr, loop, n + 1);

  tr.alpha.resize(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    tr.alpha[t] = alpha_direct(tr, tr.P, static_cast<int>(t));
  }
  return tr;
}

SimulationTrace simulate_closed_loop(double a, double b_true, double gamma,
                                     double x0, const DisturbancePlan& plan_w,
                                     const DisturbancePlan& plan_v, int T) {
  require(T >= 0, "simulate: horizon must be nonnegative");
  const auto n = static_cast<std::size_t>(T);
  const std::vector<double> w = realize(plan_w, n + 1);
  const std::vector<double> v = realize(plan_v, n + 2);
  const bool seeded = plan_w.kind == DisturbanceKind::kWhite ||
                      plan_v.kind == DisturbanceKind::kWhite;
  return simulate_with_signals(a, b_true, gamma, x0, w, v,
                               seeded ? std::string(kPrngName) : std::string());
}

}  // namespace lerc::verify
