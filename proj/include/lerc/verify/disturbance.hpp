#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace lerc::verify {

enum class DisturbanceKind { kZero, kImpulse, kWhite, kSine, kAdversarial };

std::string_view to_string(DisturbanceKind kind);
std::optional<DisturbanceKind> parse_disturbance_kind(std::string_view name);

/// Test-signal recipe for w or v.
///
///   zero        all zeros
///   impulse     amplitude at t = 0, zero elsewhere
///   white       i.i.d. uniform on [-amplitude, amplitude]
///   sine        amplitude * sin(0.3 t)
///   adversarial produced by the gain search, not by realize()
struct DisturbancePlan {
  DisturbanceKind kind = DisturbanceKind::kZero;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
  int horizon = 0;

  /// Throws ContractError on a non-finite amplitude or negative horizon.
  static DisturbancePlan make(DisturbanceKind kind, std::uint64_t seed,
                              double amplitude, int horizon);
};

/// Generator behind white plans: std::mt19937_64 (its output sequence is
/// fixed by the C++ standard) with the top 53 bits mapped to [0, 1). No
/// library distributions are involved, so samples are identical across
/// platforms.
inline constexpr std::string_view kPrngName = "mt19937_64/top53-uniform";

/// Seeded uniform doubles on [-1, 1).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
};

/// Samples `length` values of the plan. Throws ContractError for
/// adversarial plans.
std::vector<double> realize(const DisturbancePlan& plan, std::size_t length);

}  // namespace lerc::verify
