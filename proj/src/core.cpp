#include "lerc/core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lerc/errors.hpp"
#include "lerc/kernels/kernels.hpp"

namespace lerc {

Model Model::make(double a, double b, double c) {
  require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c),
          fmt::format("model fields must be finite: ({}, {}, {})", a, b, c));
  return Model{a, b, c};
}

ModelSet::ModelSet(std::vector<Model> models) : models_(std::move(models)) {
  require(!models_.empty(), "model set must be nonempty");
  for (std::size_t i = 0; i < models_.size(); ++i) {
    const Model& m = models_[i];
    Model::make(m.a, m.b, m.c);
    for (std::size_t j = 0; j < i; ++j) {
      require(!(models_[j] == m),
              fmt::format("duplicate model ({}, {}, {})", m.a, m.b, m.c));
    }
  }
}

ModelSet ModelSet::sign_pair(double a) {
  return ModelSet({Model::make(a, 1.0, 1.0), Model::make(a, -1.0, 1.0)});
}

GainSpec::GainSpec(double gamma) : gamma_(gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be positive");
}

AlphaTerms alpha_terms(std::span<const double> x, std::span<const double> w,
                       std::span<const double> v, int T) {
  require(T >= 0, "alpha: T must be nonnegative");
  const auto n = static_cast<std::size_t>(T);
  require(x.size() >= n + 2 && v.size() >= n + 2 && w.size() >= n + 1,
          fmt::format("alpha: T = {} exceeds trace length", T));
  AlphaTerms terms;
  terms.state_energy = kernels::sum_squares(x.first(n + 2));
  terms.disturbance_energy = kernels::sum_squares(w.first(n + 1));
  terms.noise_energy = kernels::sum_squares(v.first(n + 2));
  terms.initial_square = x[0] * x[0];
  return terms;
}

double alpha_direct(std::span<const double> x, std::span<const double> w,
                    std::span<const double> v, double gamma, double P, int T) {
  return alpha_terms(x, w, v, T).combine(gamma, P);
}

double alpha_direct(const SimulationTrace& trace, double P, int T) {
  require(T <= trace.horizon(),
          fmt::format("alpha: T = {} beyond horizon {}", T, trace.horizon()));
  return alpha_direct(trace.x, trace.w, trace.v, trace.gamma, P, T);
}

void validate_trace(const SimulationTrace& tr) {
  const int T = tr.horizon();
  require(T >= 0, "trace: empty horizon");
  const auto n = static_cast<std::size_t>(T);
  require(tr.x.size() == n + 2 && tr.y.size() == n + 2 && tr.v.size() == n + 2,
          "trace: x, y, v must cover 0..T+1");
  require(tr.w.size() == n + 1, "trace: w must cover 0..T");
  require(tr.alpha.size() == n + 1, "trace: alpha must cover 0..T");
  require(tr.x_hat.size() == tr.l.size(), "trace: observer column mismatch");
  for (std::size_t i = 0; i < tr.x_hat.size(); ++i) {
    require(tr.x_hat[i].size() == n + 2 && tr.l[i].size() == n + 2,
            "trace: observer columns must cover 0..T+1");
  }
  const Model& m = tr.true_model;
  for (std::size_t t = 0; t <= n + 1; ++t) {
    if (t > 0) {
      const double x = m.a * tr.x[t - 1] + m.b * tr.u[t - 1] + tr.w[t - 1];
      require(x == tr.x[t], fmt::format("trace: x({}) not reproduced", t));
    }
    require(m.c * tr.x[t] + tr.v[t] == tr.y[t],
            fmt::format("trace: y({}) not reproduced", t));
  }
}

}  // namespace lerc
