#include <cstddef>

#include "lerc/errors.hpp"
#include "lerc/kernels/kernels.hpp"
#include "lerc/kernels/scalar_math.hpp"

namespace lerc::kernels::scalar {

double sum_squares(std::span<const double> values) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = values.size();
  const std::size_t body = n - n % 4;
  for (std::size_t i = 0; i < body; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      acc[k] = acc[k] + values[i + k] * values[i + k];
    }
  }
  for (std::size_t i = body; i < n; ++i) {
    acc[i - body] = acc[i - body] + values[i] * values[i];
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void riccati_roots(std::span<const double> a, std::span<const double> gamma,
                   double c, std::span<double> P) {
  require(a.size() == gamma.size() && a.size() == P.size(),
          "riccati_roots: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    P[i] = riccati_root(a[i], c, gamma[i]);
  }
}

void certify_points(std::span<const double> a, std::span<const double> gamma,
                    const CertifyColumns& out) {
  const std::size_t n = a.size();
  require(gamma.size() == n && out.P.size() == n && out.p_feasible.size() == n &&
              out.curvature_ok.size() == n && out.negativity_ok.size() == n,
          "certify_points: length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gamma[i];
    const double P = riccati_root(a[i], 1.0, g);
    const bool feasible = P > 1.0;
    const double radicand = g * g - P;
    const bool in_domain = radicand >= -radicand_slack(g);
    const double root = std::sqrt(radicand > 0.0 ? radicand : 0.0);
    out.P[i] = P;
    out.p_feasible[i] = feasible;
    out.curvature_ok[i] = feasible && curvature_ok(P, g);
    out.negativity_ok[i] = feasible && in_domain && negativity_ok(P, g, root);
  }
}

void quadfuns(const QuadfunParams& p, std::span<const double> y,
              std::span<double> l1_next, std::span<double> lm1_next,
              std::span<double> threshold) {
  const std::size_t n = y.size();
  require(l1_next.size() == n && lm1_next.size() == n && threshold.size() == n,
          "quadfuns: length mismatch");
  const double g2 = p.gamma * p.gamma;
  const double X = p.P + g2 - 1.0;
  const bool first_larger = p.l1 >= p.lm1;
  for (std::size_t i = 0; i < n; ++i) {
    const double zero_branch = past_cost_increment(p.P, g2, g2, X, 0.0, y[i]);
    const double state_branch =
        past_cost_increment(p.P, g2, g2, X, p.x_hat, y[i]);
    l1_next[i] = p.l1 + (first_larger ? zero_branch : state_branch);
    lm1_next[i] = p.lm1 + (first_larger ? state_branch : zero_branch);
    const double next = merged_observer_next(p.a_hat, p.g_hat, p.x_hat, y[i]);
    threshold[i] = invariant_threshold(p.P, next);
  }
}

}  // namespace lerc::kernels::scalar
