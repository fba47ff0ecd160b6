#include <atomic>

#include "lerc/errors.hpp"
#include "lerc/kernels/kernels.hpp"

namespace lerc::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(LERC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
  static const bool available = cpu_has_avx2();
  return available;
}

Isa detected_isa() { return avx2_available() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  require(isa == Isa::kScalar || avx2_available(),
          std::string("kernel variant unavailable: ") + isa_name(isa));
  active().store(isa, std::memory_order_relaxed);
}

#if defined(LERC_HAVE_AVX2)
#define LERC_DISPATCH(fn, ...)                                   \
  (active_isa() == Isa::kAvx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define LERC_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double sum_squares(std::span<const double> values) {
  return LERC_DISPATCH(sum_squares, values);
}

void riccati_roots(std::span<const double> a, std::span<const double> gamma,
                   double c, std::span<double> P) {
  LERC_DISPATCH(riccati_roots, a, gamma, c, P);
}

void certify_points(std::span<const double> a, std::span<const double> gamma,
                    const CertifyColumns& out) {
  LERC_DISPATCH(certify_points, a, gamma, out);
}

void quadfuns(const QuadfunParams& params, std::span<const double> y,
              std::span<double> l1_next, std::span<double> lm1_next,
              std::span<double> threshold) {
  LERC_DISPATCH(quadfuns, params, y, l1_next, lm1_next, threshold);
}

#undef LERC_DISPATCH

}  // namespace lerc::kernels
