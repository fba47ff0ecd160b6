#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "lerc/errors.hpp"
#include "lerc/kernels/kernels.hpp"
#include "support.hpp"

namespace lerc::kernels {
namespace {

using testing::bits;

#define REQUIRE_AVX2()                                    \
  do {                                                    \
    if (!avx2_available()) GTEST_SKIP() << "no AVX2 here"; \
  } while (0)

std::vector<std::size_t> lengths() { return {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 257}; }

TEST(Dispatch, ReportsDetectedIsa) {
  EXPECT_EQ(active_isa(), detected_isa());
  EXPECT_EQ(detected_isa() == Isa::kAvx2, avx2_available());
  set_active_isa(Isa::kScalar);
  EXPECT_EQ(active_isa(), Isa::kScalar);
  set_active_isa(detected_isa());
  if (!avx2_available()) {
    EXPECT_THROW(set_active_isa(Isa::kAvx2), ContractError);
  }
}

TEST(ScalarKernels, SumSquaresSmallCases) {
  EXPECT_EQ(scalar::sum_squares({}), 0.0);
  const double v[] = {1, 2, 3, 4, 5};
  EXPECT_EQ(scalar::sum_squares(v), 55.0);
}

#if defined(LERC_HAVE_AVX2)

TEST(Avx2Kernels, SumSquaresBitIdentical) {
  REQUIRE_AVX2();
  testing::Gen g(51);
  for (std::size_t n : lengths()) {
    const auto v = g.vec(n, -1e3, 1e3);
    EXPECT_EQ(bits(avx2::sum_squares(v)), bits(scalar::sum_squares(v))) << n;
  }
}

TEST(Avx2Kernels, RiccatiRootsBitIdentical) {
  REQUIRE_AVX2();
  testing::Gen g(52);
  for (std::size_t n : lengths()) {
    for (double c : {1.0, 0.5, 2.0}) {
      const auto a = g.vec(n, -6, 6);
      auto gamma = g.vec(n, 0.05, 100);
      if (n > 2) gamma[1] = 1.0;
      std::vector<double> ps(n), pv(n);
      scalar::riccati_roots(a, gamma, c, ps);
      avx2::riccati_roots(a, gamma, c, pv);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ(std::isnan(ps[i]), std::isnan(pv[i])) << n << ":" << i;
        if (!std::isnan(ps[i])) {
          EXPECT_EQ(bits(ps[i]), bits(pv[i])) << n << ":" << i;
        }
      }
    }
  }
}

TEST(Avx2Kernels, CertifyPointsBitIdentical) {
  REQUIRE_AVX2();
  testing::Gen g(53);
  for (std::size_t n : lengths()) {
    const auto a = g.vec(n, -6, 6);
    auto gamma = g.vec(n, 0.2, 90);
    for (std::size_t i = 0; i < n; i += 5) gamma[i] = 1.0;
    std::vector<double> ps(n), pv(n);
    std::vector<std::uint8_t> fs(n), cs(n), ns(n), fv(n), cv(n), nv(n);
    scalar::certify_points(a, gamma, CertifyColumns{ps, fs, cs, ns});
    avx2::certify_points(a, gamma, CertifyColumns{pv, fv, cv, nv});
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(fs[i], fv[i]) << i;
      EXPECT_EQ(cs[i], cv[i]) << i;
      EXPECT_EQ(ns[i], nv[i]) << i;
      EXPECT_EQ(std::isnan(ps[i]), std::isnan(pv[i])) << i;
      if (!std::isnan(ps[i])) {
        EXPECT_EQ(bits(ps[i]), bits(pv[i])) << i;
      }
    }
  }
}

TEST(Avx2Kernels, QuadfunsBitIdentical) {
  REQUIRE_AVX2();
  testing::for_all(40, 54, [](testing::Gen& g, int) {
    const double gamma = g.uniform(1.5, 30);
    const double P = g.uniform(1.01, gamma * gamma);
    const double X = P + gamma * gamma - 1;
    const double a = g.uniform(-3, 3);
    QuadfunParams p{P, gamma, a * P / X, gamma * gamma * a / X, g.uniform(-4, 4),
                    g.uniform(-5, 0), g.uniform(-5, 0)};
    if (g.coin()) p.lm1 = p.l1;
    const std::size_t n = static_cast<std::size_t>(g.integer(0, 70));
    const auto y = g.vec(n, -6, 6);
    std::vector<double> s1(n), s2(n), s3(n), v1(n), v2(n), v3(n);
    scalar::quadfuns(p, y, s1, s2, s3);
    avx2::quadfuns(p, y, v1, v2, v3);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(bits(s1[i]), bits(v1[i]));
      ASSERT_EQ(bits(s2[i]), bits(v2[i]));
      ASSERT_EQ(bits(s3[i]), bits(v3[i]));
    }
  });
}

TEST(Avx2Kernels, DispatchAgreesAcrossVariants) {
  REQUIRE_AVX2();
  const auto v = testing::Gen(55).vec(1001, -2, 2);
  set_active_isa(Isa::kScalar);
  const double s = sum_squares(v);
  set_active_isa(Isa::kAvx2);
  const double w = sum_squares(v);
  set_active_isa(detected_isa());
  EXPECT_EQ(bits(s), bits(w));
}

#endif

}  // namespace
}  // namespace lerc::kernels
