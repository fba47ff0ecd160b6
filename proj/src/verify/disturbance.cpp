#include "lerc/verify/disturbance.hpp"

#include <cmath>

#include "lerc/errors.hpp"

namespace lerc::verify {
namespace {

constexpr double kSineFrequency = 0.3;  // rad per sample

}  // namespace

std::string_view to_string(DisturbanceKind kind) {
  switch (kind) {
    case DisturbanceKind::kZero:
      return "zero";
    case DisturbanceKind::kImpulse:
      return "impulse";
    case DisturbanceKind::kWhite:
      return "white";
    case DisturbanceKind::kSine:
      return "sine";
    case DisturbanceKind::kAdversarial:
      return "adversarial";
  }
  return "unknown";
}

std::optional<DisturbanceKind> parse_disturbance_kind(std::string_view name) {
  for (auto kind : {DisturbanceKind::kZero, DisturbanceKind::kImpulse,
                    DisturbanceKind::kWhite, DisturbanceKind::kSine,
                    DisturbanceKind::kAdversarial}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

DisturbancePlan DisturbancePlan::make(DisturbanceKind kind, std::uint64_t seed,
                                      double amplitude, int horizon) {
  require(std::isfinite(amplitude), "disturbance amplitude must be finite");
  require(horizon >= 0, "disturbance horizon must be nonnegative");
  return DisturbancePlan{kind, seed, amplitude, horizon};
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

std::vector<double> realize(const DisturbancePlan& plan, std::size_t length) {
  std::vector<double> out(length, 0.0);
  switch (plan.kind) {
    case DisturbanceKind::kZero:
      break;
    case DisturbanceKind::kImpulse:
      if (length > 0) out[0] = plan.amplitude;
      break;
    case DisturbanceKind::kWhite: {
      UniformSource source(plan.seed);
      for (double& value : out) value = plan.amplitude * source.next();
      break;
    }
    case DisturbanceKind::kSine:
      for (std::size_t t = 0; t < length; ++t) {
        out[t] = plan.amplitude * std::sin(kSineFrequency * static_cast<double>(t));
      }
      break;
    case DisturbanceKind::kAdversarial:
      throw ContractError("adversarial plans are produced by adversarial_gain");
  }
  return out;
}

}  // namespace lerc::verify
