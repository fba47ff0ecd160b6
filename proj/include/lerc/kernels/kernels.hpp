#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference in
// lerc::kernels::scalar and, on x86-64 builds, an AVX2 variant in
// lerc::kernels::avx2. The unqualified entry points dispatch at runtime to
// the best variant the CPU supports. Variants are bit-identical by
// construction (same operation order, no FMA), and tests hold them to that.

#include <cstdint>
#include <span>

namespace lerc::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

/// True when the AVX2 variants are compiled in and the CPU supports them.
bool avx2_available();

/// Best variant available on this machine.
Isa detected_isa();

Isa active_isa();

/// Overrides dispatch (tests, benchmarking). Throws ContractError when the
/// requested variant is unavailable. Not synchronized with concurrent
/// kernel calls.
void set_active_isa(Isa isa);

/// Output columns for batched certification; all spans share one length.
struct CertifyColumns {
  std::span<double> P;                 ///< NaN where no stationary solution
  std::span<std::uint8_t> p_feasible;  ///< P real and > 1
  std::span<std::uint8_t> curvature_ok;
  std::span<std::uint8_t> negativity_ok;
};

/// Per-call constants of the figure-data quadratics. l1 and lm1 are the past
/// costs at time t; the model with the larger one has a zero observer state.
struct QuadfunParams {
  double P = 0.0;
  double gamma = 0.0;
  double a_hat = 0.0;
  double g_hat = 0.0;
  double x_hat = 0.0;
  double l1 = 0.0;
  double lm1 = 0.0;
};

/// Pairwise-striped sum of squares: four lane accumulators combined as
/// (s0 + s1) + (s2 + s3).
double sum_squares(std::span<const double> values);

/// Stationary Riccati solution per (a[i], gamma[i]) with output gain c.
void riccati_roots(std::span<const double> a, std::span<const double> gamma,
                   double c, std::span<double> P);

/// Certification conditions per (a[i], gamma[i]) for b = +-1, c = 1.
/// Conditions are false wherever p_feasible is false.
void certify_points(std::span<const double> a, std::span<const double> gamma,
                    const CertifyColumns& out);

/// Next-step past costs and the threshold -P/(P-1) xhat(t+1)^2 per y[i].
void quadfuns(const QuadfunParams& params, std::span<const double> y,
              std::span<double> l1_next, std::span<double> lm1_next,
              std::span<double> threshold);

namespace scalar {
double sum_squares(std::span<const double> values);
void riccati_roots(std::span<const double> a, std::span<const double> gamma,
                   double c, std::span<double> P);
void certify_points(std::span<const double> a, std::span<const double> gamma,
                    const CertifyColumns& out);
void quadfuns(const QuadfunParams& params, std::span<const double> y,
              std::span<double> l1_next, std::span<double> lm1_next,
              std::span<double> threshold);
}  // namespace scalar

#if defined(LERC_HAVE_AVX2)
namespace avx2 {
double sum_squares(std::span<const double> values);
void riccati_roots(std::span<const double> a, std::span<const double> gamma,
                   double c, std::span<double> P);
void certify_points(std::span<const double> a, std::span<const double> gamma,
                    const CertifyColumns& out);
void quadfuns(const QuadfunParams& params, std::span<const double> y,
              std::span<double> l1_next, std::span<double> lm1_next,
              std::span<double> threshold);
}  // namespace avx2
#endif

}  // namespace lerc::kernels
