#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lerc/ce_controller.hpp"

namespace lerc::verify {

/// Largest prefix ratio over T' = 0..T of
///
///   sum_{t<=T'+1} x^2 / (gamma^2 sum_{t<=T'} w^2 + gamma^2 sum_{t<=T'+1} v^2 + P x0^2)
///
/// for the closed loop with true input gain b_true. A ratio above 1 is a
/// finite-gain violation at that prefix. Zero signals give 0.
double gain_ratio(const CeController& ctrl, double b_true, double x0,
                  std::span<const double> w, std::span<const double> v);

struct AdversaryOptions {
  int sweeps = 12;
  double initial_step = 0.5;
  std::vector<double> b_values{1.0, -1.0};
};

struct AdversarialResult {
  double best_ratio = 0.0;
  double b_true = 1.0;
  double x0 = 0.0;
  std::vector<double> w;  ///< 0..T
  std::vector<double> v;  ///< 0..T+1
  /// Incumbent ratio after every sweep, in restart order. Non-decreasing.
  std::vector<double> history;
};

/// Coordinate ascent over (x0, w(0..T), v(0..T+1)) for each b in
/// options.b_values.
/// Each restart starts from uniform [-1, 1) signals drawn from seed + restart.
/// A coordinate moves by +-step when that raises the ratio; the step halves
/// after a sweep without progress. Requires 0 <= T <= 200, restarts >= 1.
AdversarialResult adversarial_gain(double a, double gamma, int T, int restarts,
                                   std::uint64_t seed, AdversaryOptions options = {});

}  // namespace lerc::verify
