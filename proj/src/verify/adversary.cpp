#include "lerc/verify/adversary.hpp"

#include <algorithm>

#include "lerc/errors.hpp"
#include "lerc/verify/disturbance.hpp"

namespace lerc::verify {

double gain_ratio(const CeController& ctrl, double b_true, double x0,
                  std::span<const double> w, std::span<const double> v) {
  require(!w.empty() && v.size() == w.size() + 1,
          "gain_ratio: need |w| = T+1 >= 1 and |v| = T+2");
  const double g2 = ctrl.gamma * ctrl.gamma;
  CeLoop loop(ctrl);
  double x = x0;
  double state = x * x;
  double penalty = ctrl.P * x0 * x0 + g2 * v[0] * v[0];
  double best = 0.0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    const double u = loop.act(x + v[t]);
    x = ctrl.a * x + b_true * u + w[t];
    state += x * x;
    penalty += g2 * (w[t] * w[t] + v[t + 1] * v[t + 1]);
    if (penalty > 0.0) best = std::max(best, state / penalty);
  }
  return best;
}

AdversarialResult adversarial_gain(double a, double gamma, int T, int restarts,
                                   std::uint64_t seed, AdversaryOptions options) {
  require(T >= 0 && T <= 200, "adversarial_gain: horizon must be in [0, 200]");
  require(restarts >= 1, "adversarial_gain: restarts must be positive");
  require(options.sweeps >= 1 && options.initial_step > 0.0 &&
              !options.b_values.empty(),
          "adversarial_gain: bad ascent options");
  const CeController ctrl = CeController::make(a, gamma);
  const auto n = static_cast<std::size_t>(T);

  AdversarialResult best;
  best.best_ratio = -1.0;
  for (int r = 0; r < restarts; ++r) {
    UniformSource source(seed + static_cast<std::uint64_t>(r));
    // z = (x0, w(0..T), v(0..T+1))
    std::vector<double> start(2 * n + 4);
    for (double& value : start) value = source.next();

    for (double b : options.b_values) {
      require(b == 1.0 || b == -1.0, "adversarial_gain: b must be +1 or -1");
      std::vector<double> z = start;
      const auto ratio_of = [&](const std::vector<double>& s) {
        const std::span<const double> all(s);
        return gain_ratio(ctrl, b, s[0], all.subspan(1, n + 1), all.subspan(n + 2));
      };
      double current = ratio_of(z);
      double step = options.initial_step;
      for (int sweep = 0; sweep < options.sweeps; ++sweep) {
        bool moved = false;
        for (std::size_t i = 0; i < z.size(); ++i) {
          const double keep = z[i];
          for (double delta : {step, -step}) {
            z[i] = keep + delta;
            const double trial = ratio_of(z);
            if (trial > current) {
              current = trial;
              moved = true;
              break;
            }
            z[i] = keep;
          }
        }
        if (!moved) step *= 0.5;
        if (current > best.best_ratio) {
          best.best_ratio = current;
          best.b_true = b;
          best.x0 = z[0];
          best.w.assign(z.begin() + 1, z.begin() + 1 + static_cast<std::ptrdiff_t>(n + 1));
          best.v.assign(z.begin() + 1 + static_cast<std::ptrdiff_t>(n + 1), z.end());
        }
        best.history.push_back(best.best_ratio);
      }
    }
  }
  return best;
}

}  // namespace lerc::verify
