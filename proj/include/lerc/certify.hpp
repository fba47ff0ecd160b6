#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lerc {

/// Closed-form certificate for the sign pair at pole a and gain bound gamma.
struct CertificationReport {
  double a = 0.0;
  double gamma = 0.0;
  double P = 0.0;            ///< NaN when no stationary solution exists
  bool p_feasible = false;   ///< P real and > 1
  bool curvature_ok = false; ///< P > 2 gamma - 1
  bool negativity_ok = false;
  bool certified = false;    ///< conjunction of the three
};

/// P > 2 gamma - 1, strict.
bool curvature_condition(double P, double gamma);

/// (P + 2g^2 - 1)(P - 1 - 2 sqrt(g^2 - P))^2 >= (P - 1)((P + 1)^2 - 4g^2).
/// A radicand below zero by at most 1e-12 max(1, g^2) is clamped to zero;
/// anything further negative throws DomainError.
bool strong_negativity(double P, double gamma);

/// Conditions are reported false when P is infeasible. Throws ContractError
/// unless gamma > 0.
CertificationReport certify(double a, double gamma);

/// certify() over paired arrays through the vectorized kernel.
std::vector<CertificationReport> certify_batch(std::span<const double> a,
                                               std::span<const double> gamma);

/// Envelope the minimal certified gamma is known to lie in:
/// (|a| + sqrt(a^2 + 1)) sqrt(a^2 + 1) <= gamma* <= 2.1 a^2 + 2.
double gamma_lower_bound(double a);
double gamma_upper_bound(double a);

struct GammaStarSearch {
  double a = 0.0;
  std::optional<double> gamma;  ///< empty when nothing certifies below 2U
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool within_bounds = false;
};

/// Non-throwing minimal-gamma search: scans upward from the lower bound in
/// steps of (U - L)/256 until the first uncertified-to-certified transition
/// (up to 2U), then bisects that bracket down to tol. If the lower bound
/// itself certifies, scans downward instead.
GammaStarSearch find_gamma_star(double a, double tol);

/// Throws NotFound when no certified gamma exists below 2(2.1 a^2 + 2), and
/// ContractError when the result leaves [L - tol, U + tol].
double gamma_star(double a, double tol = 1e-6);

/// Endpoints of the two sets in the substituted measurement
/// z = y + P xhat / (2 gamma^2) where each next-step past-cost bound exceeds
/// the threshold -P/(P-1) xhat(t+1)^2, per unit xhat > 0.
struct IntervalPair {
  double i1_lo = 0.0;
  double i1_hi = 0.0;
  double im1_lo = 0.0;
  double im1_hi = 0.0;

  /// The two closed intervals share at most one point (up to slack).
  bool disjoint(double slack = 1e-9) const {
    const double lo = i1_lo > im1_lo ? i1_lo : im1_lo;
    const double hi = i1_hi < im1_hi ? i1_hi : im1_hi;
    return hi <= lo + slack;
  }
};

/// Throws DomainError unless P > 1, gamma^2 >= P (within slack) and
/// (P + 1)^2 > 4 gamma^2.
IntervalPair interval_pair(double P, double gamma);

/// Intervals for an actual estimate x_hat; negative x_hat reflects them.
IntervalPair scale_intervals(const IntervalPair& unit, double x_hat);

struct SweepRow {
  double a = 0.0;
  double gamma_star = 0.0;  ///< NaN when the search found nothing
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double P = 0.0;
  bool p_feasible = false;
  bool curvature_ok = false;
  bool negativity_ok = false;
  bool within_bounds = false;
  std::string error;  ///< empty on success
};

/// gamma_star at each grid point. Rows are independent; failures are
/// recorded per row and never abort the sweep.
std::vector<SweepRow> sweep_points(std::span<const double> grid, double tol);

/// sweep_points on steps evenly spaced points of [a_min, a_max], steps >= 2.
std::vector<SweepRow> sweep(double a_min, double a_max, int steps, double tol);

struct QuadfunRow {
  double y = 0.0;
  double l1_next = 0.0;
  double lm1_next = 0.0;
  double threshold = 0.0;
};

/// Next-step past costs of both models and the threshold
/// -P/(P-1) (a_hat xhat + 2 g_hat y)^2 over y_grid. Throws ContractError
/// unless the Riccati solution has P > 1.
std::vector<QuadfunRow> figure_quadfuns(double a, double gamma, double x_hat,
                                        double l1, double lm1,
                                        std::span<const double> y_grid);

}  // namespace lerc
