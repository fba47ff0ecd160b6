#pragma once

// First-principles checks of the recursions. Nothing in here advances an
// observer to obtain its answer; each oracle builds the underlying quadratic
// program explicitly and solves it with dense linear algebra.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lerc/core.hpp"
#include "lerc/riccati.hpp"

namespace lerc::verify {

/// J(z) = z' H z + 2 g' z + k.
struct Quadratic {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  double k = 0.0;

  explicit Quadratic(Eigen::Index n);

  /// Adds scale * (row' z + offset)^2.
  void add_square(double scale, const Eigen::RowVectorXd& row, double offset);

  double value(const Eigen::VectorXd& z) const;
};

struct QuadraticMax {
  Eigen::VectorXd argmax;
  double value = 0.0;
};

/// Maximizes J subject to e' z + d = target via the KKT system
///   [2H e; e' 0][z; mu] = [-2g; target - d].
/// Throws Unbounded unless H is negative definite on the null space of e',
/// Singular if the KKT matrix is rank deficient.
QuadraticMax maximize_on_hyperplane(const Quadratic& J, const Eigen::RowVectorXd& e,
                                    double d, double target);

/// Unconstrained maximum. Throws Unbounded unless H is negative definite.
QuadraticMax maximize(const Quadratic& J);

struct OracleResult {
  double recursion_value = 0.0;
  double oracle_value = 0.0;
  double abs_gap = 0.0;
  /// Maximizer laid out as (x0, w(0..t), v(0..t)).
  std::vector<double> argmax_witness;
};

/// Worst-case accumulated cost consistent with (u, y) on [0, t] and
/// x(t+1) = x_next:
///
///   sup_{x0, w, v} sum_{tau<=t} x^2 - gamma^2 (w^2 + v^2) - P x0^2,
///
/// compared with -P (x_next - x_hat(t+1))^2 + l(t+1) from the observer.
/// Requires 0 <= t = |u| - 1 <= 8, |y| = |u|, and P >= 1.
OracleResult past_cost_oracle(const Model& model, double gamma,
                              std::span<const double> u, std::span<const double> y,
                              double x_next);

/// sup over (x, v) with c x + v = y of x^2 - gamma^2 v^2 - P (x - x_hat)^2 + l,
/// from a 3x3 KKT solve.
double alpha_final_layer(const SolvedModel& solved, double x_hat, double l,
                         double y);

/// The same supremum taken over the whole history: free (x0, w(0..t-1)),
/// measurements y(0..t), inputs u(0..t-1). Requires |y| = |u| + 1 <= 9.
double alpha_history_oracle(const Model& model, double gamma,
                            std::span<const double> u, std::span<const double> y);

struct WorstY {
  double y_star_l1 = 0.0;
  double y_star_lm1 = 0.0;
  double max_l1 = 0.0;
  double max_lm1 = 0.0;
};

/// Golden-section maximization over y of both next-step past costs of the
/// merged sign-pair recursion (c = 1). The model with the larger current
/// past cost holds the zero estimate. The initial bracket |y| <= 10(|xhat|+1)
/// is widened while a maximizer sits on its edge. Requires P > 1.
WorstY worst_y_bruteforce(double P, double gamma, double x_hat, double l1,
                          double lm1);

struct OracleFailure {
  Model model;
  int trial = 0;
  int horizon = 0;
  double gap = 0.0;
  std::string error;  ///< empty unless the oracle threw
};

struct OracleReport {
  int trials = 0;
  double max_gap = 0.0;
  std::vector<OracleFailure> failures;
};

/// Runs past_cost_oracle on `trials_per_model` seeded draws per model.
/// Trial k uses horizon t = 1 + k mod max_horizon and (u, y, x_next) uniform
/// on [-1, 1). A trial fails when its gap reaches tol or the oracle throws.
OracleReport run_oracle_trials(const ModelSet& models, double gamma,
                               int trials_per_model, int max_horizon,
                               std::uint64_t seed, double tol = 1e-8);

}  // namespace lerc::verify
