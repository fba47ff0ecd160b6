#pragma once

#include <span>
#include <string>
#include <vector>

namespace lerc {

/// One feasible parameter triple of the uncertain scalar system
///
///   x(t+1) = a x(t) + b u(t) + w(t),   y(t) = c x(t) + v(t).
struct Model {
  double a = 0.0;  ///< pole
  double b = 0.0;  ///< input gain
  double c = 0.0;  ///< output gain

  /// Throws ContractError unless every field is finite.
  static Model make(double a, double b, double c);

  friend bool operator==(const Model&, const Model&) = default;
};

/// Nonempty ordered set of distinct models.
class ModelSet {
 public:
  /// Throws ContractError on an empty list, a duplicate triple, or a
  /// non-finite field.
  explicit ModelSet(std::vector<Model> models);

  /// The unknown-input-sign family {(a, +1, 1), (a, -1, 1)}.
  static ModelSet sign_pair(double a);

  std::span<const Model> models() const { return models_; }
  std::size_t size() const { return models_.size(); }
  const Model& operator[](std::size_t i) const { return models_[i]; }

 private:
  std::vector<Model> models_;
};

/// Candidate upper bound on the closed-loop l2 gain.
class GainSpec {
 public:
  explicit GainSpec(double gamma);
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

/// Time-indexed closed-loop record over horizon T.
///
/// Index ranges: x, y, v cover 0..T+1; u, w cover 0..T. Observer columns
/// cover 0..T+1 and alpha covers 0..T. The measurement y(T+1) exists so that
/// the v(T+1) term of the finite-gain sum is defined.
struct SimulationTrace {
  Model true_model;
  double gamma = 0.0;
  double P = 0.0;
  std::string prng;

  std::vector<double> x, u, y, w, v;
  std::vector<std::vector<double>> x_hat;  ///< [model][t]
  std::vector<std::vector<double>> l;      ///< [model][t]
  std::vector<double> alpha;

  int horizon() const { return static_cast<int>(u.size()) - 1; }
};

/// The three energies in the finite-gain sum and the prior term, kept apart
/// so callers can rescale gamma without re-summing.
struct AlphaTerms {
  double state_energy = 0.0;        ///< sum_{t<=T+1} x(t)^2
  double disturbance_energy = 0.0;  ///< sum_{t<=T} w(t)^2
  double noise_energy = 0.0;        ///< sum_{t<=T+1} v(t)^2
  double initial_square = 0.0;      ///< x(0)^2

  double combine(double gamma, double P) const {
    const double g2 = gamma * gamma;
    return state_energy - g2 * disturbance_energy - g2 * noise_energy -
           P * initial_square;
  }
};

AlphaTerms alpha_terms(std::span<const double> x, std::span<const double> w,
                       std::span<const double> v, int T);

/// alpha(T) = sum x^2 - gamma^2 sum w^2 - gamma^2 sum v^2 - P x(0)^2, with the
/// sum limits of the finite-gain condition. No clamping.
double alpha_direct(std::span<const double> x, std::span<const double> w,
                    std::span<const double> v, double gamma, double P, int T);

double alpha_direct(const SimulationTrace& trace, double P, int T);

/// Checks sequence lengths and that x and y are reproduced exactly by the
/// plant equations from (x(0), u, w, v). Throws ContractError on mismatch.
void validate_trace(const SimulationTrace& trace);

}  // namespace lerc
