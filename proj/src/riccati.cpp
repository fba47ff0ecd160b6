#include "lerc/riccati.hpp"

#include <cmath>

#include <fmt/format.h>

#include "lerc/errors.hpp"
#include "lerc/kernels/scalar_math.hpp"

namespace lerc {

RiccatiResult solve_riccati(const Model& model, double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "solve_riccati: gamma must be positive");
  const double P = kernels::scalar::riccati_root(model.a, model.c, gamma);
  if (std::isnan(P)) {
    return Infeasible{fmt::format(
        "no positive stationary Riccati solution for a={}, c={}, gamma={}",
        model.a, model.c, gamma)};
  }
  const double g2 = gamma * gamma;
  SolvedModel s;
  s.model = model;
  s.gamma = gamma;
  s.P = P;
  s.X = P + g2 * (model.c * model.c) - 1.0;
  s.a_hat = model.a * P / s.X;
  s.g_hat = g2 * model.a * model.c / s.X;

  const double scale = P > 1.0 ? P : 1.0;
  const double residual = riccati_residual(P, model, gamma);
  require(std::abs(residual) < 1e-10 * scale,
          fmt::format("solve_riccati: residual {} at P={}", residual, P));
  require(P <= g2 * (1.0 + 1e-12),
          fmt::format("solve_riccati: P={} exceeds gamma^2={}", P, g2));
  return s;
}

SolvedModel solve_riccati_or_throw(const Model& model, double gamma) {
  RiccatiResult r = solve_riccati(model, gamma);
  if (auto* bad = std::get_if<Infeasible>(&r)) throw ContractError(bad->reason);
  return std::get<SolvedModel>(r);
}

double riccati_residual(double P, const Model& model, double gamma) {
  const double X = P + gamma * gamma * model.c * model.c - 1.0;
  require(std::abs(X) > 1e-14, "riccati_residual: P + gamma^2 c^2 - 1 vanishes");
  return P - 1.0 / (model.a * model.a / X + 1.0 / (gamma * gamma));
}

}  // namespace lerc
