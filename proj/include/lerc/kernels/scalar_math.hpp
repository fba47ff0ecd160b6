#pragma once

// Per-element formulas shared by the library and the scalar kernels. The
// AVX2 kernels replay these operation for operation, so any change here must
// be mirrored in src/kernels/avx2.cpp.

#include <cmath>
#include <limits>

namespace lerc::kernels::scalar {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Larger root of P^2 + P(a^2 g^2 - g^2 + g^2 c^2 - 1) - g^2(g^2 c^2 - 1) = 0
/// followed by one pass of P <- (a^2 / X + 1/g^2)^-1. NaN when the root is
/// not real, not positive, or leaves X = P + g^2 c^2 - 1 non-positive.
inline double riccati_root(double a, double c, double gamma) {
  const double g2 = gamma * gamma;
  const double g2c2 = g2 * (c * c);
  const double B = g2 * (a * a) - g2 + g2c2 - 1.0;
  const double C = -(g2 * (g2c2 - 1.0));
  const double disc = B * B - 4.0 * C;
  if (!(disc >= 0.0)) return kNaN;
  const double root = std::sqrt(disc);
  // Rationalized branch avoids cancellation when B is large and positive.
  const double P0 = B <= 0.0 ? 0.5 * (root - B) : (-2.0 * C) / (B + root);
  const double X0 = P0 + g2c2 - 1.0;
  if (!(P0 > 0.0) || !(X0 > 0.0)) return kNaN;
  const double P = 1.0 / ((a * a) / X0 + 1.0 / g2);
  const double X = P + g2c2 - 1.0;
  if (!(P > 0.0) || !(X > 0.0)) return kNaN;
  return P;
}

inline bool curvature_ok(double P, double gamma) {
  return P > 2.0 * gamma - 1.0;
}

/// Relative slack under which a negative radicand gamma^2 - P is treated as
/// rounding and clamped to zero.
inline double radicand_slack(double gamma) {
  const double g2 = gamma * gamma;
  return 1e-12 * (g2 > 1.0 ? g2 : 1.0);
}

/// Strong negativity inequality with the radicand already clamped.
inline bool negativity_ok(double P, double gamma, double root) {
  const double g2 = gamma * gamma;
  const double f = P - 1.0 - 2.0 * root;
  const double lhs = (P + 2.0 * g2 - 1.0) * (f * f);
  const double q = P + 1.0;
  const double rhs = (P - 1.0) * (q * q - 4.0 * g2);
  return lhs >= rhs;
}

/// -P xhat^2 - g^2 y^2 + (P xhat + g^2 c y)^2 / X: one step of the past-cost
/// recursion, without the running value.
inline double past_cost_increment(double P, double g2, double g2c, double X,
                                  double x_hat, double y) {
  const double innov = P * x_hat + g2c * y;
  return -(P * (x_hat * x_hat)) - g2 * (y * y) + (innov * innov) / X;
}

/// Merged observer of the sign pair: xhat(t+1) = a_hat xhat(t) + 2 g_hat y(t),
/// summed as (a_hat xhat + g_hat y) + g_hat y. That is the bank's rounding
/// when one estimate is zero, so merged and bank runs agree bit for bit.
inline double merged_observer_next(double a_hat, double g_hat, double x_hat,
                                   double y) {
  const double g_y = g_hat * y;
  return (a_hat * x_hat + g_y) + g_y;
}

/// -P/(P-1) xhat^2, the level the smaller past cost must stay below.
inline double invariant_threshold(double P, double x_hat) {
  return -(P / (P - 1.0)) * (x_hat * x_hat);
}

}  // namespace lerc::kernels::scalar
