#include "lerc/verify/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <fmt/format.h>

#include "lerc/errors.hpp"
#include "lerc/observer.hpp"
#include "lerc/verify/disturbance.hpp"

namespace lerc::verify {
namespace {

constexpr int kMaxOracleHorizon = 8;

double definiteness_tolerance(const Eigen::MatrixXd& H) {
  return 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff());
}

void require_negative_definite(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() == 0) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  if (!(top < -tol)) {
    throw Unbounded(fmt::format(
        "quadratic is not concave on its domain (largest curvature {})", top));
  }
}

// Affine state map x(tau) = rows[tau] z + offsets[tau] over
// z = (x0, w(0), ..., w(n-2)).
struct StateMap {
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> offsets;
};

StateMap propagate(const Model& m, std::span<const double> u, Eigen::Index n,
                   std::size_t steps) {
  StateMap map;
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
  row(0) = 1.0;
  double offset = 0.0;
  map.rows.push_back(row);
  map.offsets.push_back(offset);
  for (std::size_t tau = 0; tau < steps; ++tau) {
    row = m.a * row;
    row(static_cast<Eigen::Index>(tau) + 1) += 1.0;
    offset = m.a * offset + m.b * u[tau];
    map.rows.push_back(row);
    map.offsets.push_back(offset);
  }
  return map;
}

Eigen::RowVectorXd unit_row(Eigen::Index n, Eigen::Index i) {
  Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
  r(i) = 1.0;
  return r;
}

// sum_{tau<=last} x^2 - g^2 sum w^2 - g^2 sum (y - c x)^2 - P x0^2 with
// every w in z penalized.
Quadratic history_cost(const Model& m, double gamma, double P, const StateMap& map,
                       std::span<const double> y, Eigen::Index n) {
  const double g2 = gamma * gamma;
  Quadratic J(n);
  for (std::size_t tau = 0; tau < y.size(); ++tau) {
    J.add_square(1.0, map.rows[tau], map.offsets[tau]);
    J.add_square(-g2, -m.c * map.rows[tau], y[tau] - m.c * map.offsets[tau]);
  }
  for (Eigen::Index i = 1; i < n; ++i) J.add_square(-g2, unit_row(n, i), 0.0);
  J.add_square(-P, unit_row(n, 0), 0.0);
  return J;
}

std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

// Golden section on [-B, B], doubling B while the maximizer hugs an edge.
std::pair<double, double> bracketed_max(const std::function<double(double)>& f,
                                        double half_width) {
  for (int attempt = 0; attempt < 60; ++attempt) {
    const auto best = golden_max(f, -half_width, half_width, 1e-10);
    if (std::abs(best.first) < 0.98 * half_width) return best;
    half_width *= 2.0;
  }
  throw ContractError("worst_y_bruteforce: no interior maximum");
}

}  // namespace

Quadratic::Quadratic(Eigen::Index n)
    : H(Eigen::MatrixXd::Zero(n, n)), g(Eigen::VectorXd::Zero(n)) {}

void Quadratic::add_square(double scale, const Eigen::RowVectorXd& row,
                           double offset) {
  H.noalias() += scale * row.transpose() * row;
  g += (scale * offset) * row.transpose();
  k += scale * offset * offset;
}

double Quadratic::value(const Eigen::VectorXd& z) const {
  return z.dot(H * z) + 2.0 * g.dot(z) + k;
}

QuadraticMax maximize_on_hyperplane(const Quadratic& J, const Eigen::RowVectorXd& e,
                                    double d, double target) {
  const Eigen::Index n = J.H.rows();
  require(e.size() == n, "maximize_on_hyperplane: dimension mismatch");

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + 1, n + 1);
  K.topLeftCorner(n, n) = 2.0 * J.H;
  K.topRightCorner(n, 1) = e.transpose();
  K.bottomLeftCorner(1, n) = e;
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = -2.0 * J.g;
  rhs(n) = target - d;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible()) throw Singular("KKT matrix is singular");

  // Concavity on the hyperplane: reduce H to the null space of e'.
  const Eigen::MatrixXd e_matrix = e;
  Eigen::FullPivLU<Eigen::MatrixXd> constraint(e_matrix);
  if (constraint.rank() != 1) throw Singular("constraint row vanishes");
  if (n > 1) {
    const Eigen::MatrixXd N = constraint.kernel();
    require_negative_definite(N.transpose() * J.H * N, definiteness_tolerance(J.H));
  }

  const Eigen::VectorXd sol = lu.solve(rhs);
  QuadraticMax out;
  out.argmax = sol.head(n);
  out.value = J.value(out.argmax);
  return out;
}

QuadraticMax maximize(const Quadratic& J) {
  require_negative_definite(J.H, definiteness_tolerance(J.H));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(J.H);
  if (!lu.isInvertible()) throw Singular("Hessian is singular");
  QuadraticMax out;
  out.argmax = lu.solve(-J.g);
  out.value = J.value(out.argmax);
  return out;
}

OracleResult past_cost_oracle(const Model& model, double gamma,
                              std::span<const double> u, std::span<const double> y,
                              double x_next) {
  require(!u.empty() && u.size() == y.size(),
          "past_cost_oracle: u and y must share a nonempty length");
  const int t = static_cast<int>(u.size()) - 1;
  require(t <= kMaxOracleHorizon,
          fmt::format("past_cost_oracle: horizon {} exceeds {}", t, kMaxOracleHorizon));
  const SolvedModel solved = solve_riccati_or_throw(model, gamma);
  require(solved.P >= 1.0, "past_cost_oracle: requires P >= 1");

  // z = (x0, w(0..t)); x(t+1) is the constrained affine image of z.
  const Eigen::Index n = t + 2;
  const StateMap map = propagate(model, u, n, u.size());
  const Quadratic J = history_cost(model, gamma, solved.P, map, y, n);
  const QuadraticMax best =
      maximize_on_hyperplane(J, map.rows.back(), map.offsets.back(), x_next);

  ObserverState obs(solved);
  for (std::size_t tau = 0; tau < u.size(); ++tau) {
    obs = observer_step(obs, u[tau], y[tau]);
  }
  const double miss = x_next - obs.x_hat;

  OracleResult result;
  result.recursion_value = -solved.P * miss * miss + obs.l;
  result.oracle_value = best.value;
  result.abs_gap = std::abs(result.recursion_value - result.oracle_value);
  result.argmax_witness.assign(best.argmax.data(), best.argmax.data() + n);
  for (std::size_t tau = 0; tau < y.size(); ++tau) {
    const double x = map.rows[tau].dot(best.argmax) + map.offsets[tau];
    result.argmax_witness.push_back(y[tau] - model.c * x);
  }
  return result;
}

double alpha_final_layer(const SolvedModel& s, double x_hat, double l, double y) {
  const double g2 = s.gamma * s.gamma;
  const double c = s.model.c;
  Eigen::Matrix3d K;
  K << 2.0 * (1.0 - s.P), 0.0, c,
       0.0, -2.0 * g2, 1.0,
       c, 1.0, 0.0;
  const Eigen::Vector3d rhs(-2.0 * s.P * x_hat, 0.0, y);
  // Along the constraint direction (1, -c) the curvature is -X.
  if (!(s.X > 0.0)) throw Unbounded("final layer is not concave (X <= 0)");
  Eigen::FullPivLU<Eigen::Matrix3d> lu(K);
  if (!lu.isInvertible()) throw Singular("final-layer KKT matrix is singular");
  const Eigen::Vector3d sol = lu.solve(rhs);
  const double x = sol(0);
  const double v = sol(1);
  return x * x - g2 * v * v - s.P * (x - x_hat) * (x - x_hat) + l;
}

double alpha_history_oracle(const Model& model, double gamma,
                            std::span<const double> u, std::span<const double> y) {
  require(y.size() == u.size() + 1, "alpha_history_oracle: need |y| = |u| + 1");
  require(y.size() <= kMaxOracleHorizon + 1, "alpha_history_oracle: horizon too long");
  const SolvedModel solved = solve_riccati_or_throw(model, gamma);
  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  const StateMap map = propagate(model, u, n, u.size());
  return maximize(history_cost(model, gamma, solved.P, map, y, n)).value;
}

WorstY worst_y_bruteforce(double P, double gamma, double x_hat, double l1,
                          double lm1) {
  require(P > 1.0, "worst_y_bruteforce: requires P > 1");
  const double g2 = gamma * gamma;
  const double X = P + g2 - 1.0;
  const bool first_larger = l1 >= lm1;
  const double l_zero = first_larger ? l1 : lm1;
  const double l_state = first_larger ? lm1 : l1;

  const auto zero_branch = [&](double y) {
    return l_zero - g2 * y * y + (g2 * y) * (g2 * y) / X;
  };
  const auto state_branch = [&](double y) {
    const double innov = P * x_hat + g2 * y;
    return l_state - P * x_hat * x_hat - g2 * y * y + innov * innov / X;
  };

  const double half_width = 10.0 * (std::abs(x_hat) + 1.0);
  const auto [y_zero, max_zero] = bracketed_max(zero_branch, half_width);
  const auto [y_state, max_state] = bracketed_max(state_branch, half_width);

  WorstY out;
  if (first_larger) {
    out = WorstY{y_zero, y_state, max_zero, max_state};
  } else {
    out = WorstY{y_state, y_zero, max_state, max_zero};
  }
  return out;
}

OracleReport run_oracle_trials(const ModelSet& models, double gamma,
                               int trials_per_model, int max_horizon,
                               std::uint64_t seed, double tol) {
  require(trials_per_model >= 1, "oracle trials: need at least one trial");
  require(max_horizon >= 1 && max_horizon <= kMaxOracleHorizon,
          fmt::format("oracle trials: horizon must be in [1, {}]", kMaxOracleHorizon));
  OracleReport report;
  UniformSource source(seed);
  for (const Model& m : models.models()) {
    for (int k = 0; k < trials_per_model; ++k) {
      const int t = 1 + k % max_horizon;
      std::vector<double> u(static_cast<std::size_t>(t) + 1);
      std::vector<double> y(u.size());
      for (double& value : u) value = source.next();
      for (double& value : y) value = source.next();
      const double x_next = source.next();
      ++report.trials;
      try {
        const OracleResult r = past_cost_oracle(m, gamma, u, y, x_next);
        report.max_gap = std::max(report.max_gap, r.abs_gap);
        if (!(r.abs_gap < tol)) report.failures.push_back({m, k, t, r.abs_gap, ""});
      } catch (const std::exception& e) {
        report.failures.push_back(
            {m, k, t, std::numeric_limits<double>::quiet_NaN(), e.what()});
      }
    }
  }
  return report;
}

}  // namespace lerc::verify
