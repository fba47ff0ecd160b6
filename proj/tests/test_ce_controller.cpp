#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "lerc/ce_controller.hpp"
#include "lerc/errors.hpp"
#include "support.hpp"

namespace lerc {
namespace {

constexpr double kAHat = 0.39300534512134339864;
constexpr double kGHat = 0.64746096520390037478;

const CeController& unit_pole() {
  static const CeController ctrl = CeController::make(1.0, 4.0);
  return ctrl;
}

TEST(CeController, RequiresPAboveOne) {
  EXPECT_THROW(CeController::make(1.0, 1.0), ContractError);
  EXPECT_THROW(CeController::make(0.0, 1.0), ContractError);
  EXPECT_NO_THROW(CeController::make(0.0, 1.01));
}

TEST(CeController, SharesGainsWithRiccati) {
  const CeController& c = unit_pole();
  for (double b : {1.0, -1.0}) {
    const SolvedModel s = solve_riccati_or_throw(Model{1, b, 1}, 4.0);
    EXPECT_EQ(c.P, s.P);
    EXPECT_EQ(c.a_hat, s.a_hat);
    EXPECT_EQ(c.g_hat, s.g_hat);
  }
}

TEST(Control, Examples) {
  const CeController& c = unit_pole();
  EXPECT_EQ(control(c, ObserverPair{0, 0, -1, -1}, 0.0), 0.0);
  EXPECT_NEAR(control(c, ObserverPair{0, 0, -2, -2}, 1.0), -kGHat, 1e-15);
  EXPECT_NEAR(control(c, ObserverPair{0, 2, -3, -1}, 0.0), 2 * kAHat, 1e-15);
}

TEST(MergedStep, Examples) {
  const CeController& c = unit_pole();
  MergedState s = merged_step(c, MergedState{}, 0.0);
  EXPECT_EQ(s.x_hat, 0.0);
  EXPECT_EQ(s.l1, 0.0);
  EXPECT_EQ(s.lm1, 0.0);

  s = merged_step(c, MergedState{}, 1.0);
  EXPECT_NEAR(s.x_hat, 2 * kGHat, 1e-15);
  EXPECT_NEAR(s.l1, -5.640624556737594003, 1e-13);
  EXPECT_NEAR(s.lm1, -5.640624556737594003, 1e-13);

  s = merged_step(c, MergedState{1.0, 0.0, -2.0, 0}, 0.0);
  EXPECT_NEAR(s.x_hat, kAHat, 1e-15);
  EXPECT_EQ(s.l1, 0.0);
  EXPECT_NEAR(s.lm1, -7.895080176820150980, 1e-13);
  EXPECT_EQ(s.t, 1);
}

TEST(CeLoop, DeadBeatOnLargerPastCost) {
  testing::for_all(20, 31, [](testing::Gen& g, int) {
    CeLoop loop(unit_pole());
    for (int t = 0; t < 200; ++t) {
      loop.act(g.uniform(-3, 3));
      const auto& bank = loop.bank();
      const int larger = bank[0].l >= bank[1].l ? 0 : 1;
      ASSERT_EQ(bank[larger].x_hat, 0.0) << "t=" << t;
    }
  });
}

TEST(CeLoop, TiesGoToPositiveModel) {
  CeLoop loop(unit_pole());
  EXPECT_NEAR(loop.act(1.0), -kGHat, 1e-15);
  EXPECT_EQ(loop.bank()[0].x_hat, 0.0);
  EXPECT_EQ(loop.time(), 1);
  EXPECT_EQ(loop.info().t, 1);
}

TEST(CeLoop, Deterministic) {
  const auto y = testing::Gen(5).vec(300, -2, 2);
  CeLoop a(unit_pole()), b(unit_pole());
  for (double yt : y) EXPECT_EQ(testing::bits(a.act(yt)), testing::bits(b.act(yt)));
}

TEST(Equivalence, Examples) {
  const CeController& c = unit_pole();
  EXPECT_EQ(equivalence_check(c, std::vector<double>(100, 0.0)), 0.0);
  std::vector<double> impulse(50, 0.0);
  impulse[0] = 1.0;
  EXPECT_LE(equivalence_check(c, impulse), 1e-9);
  EXPECT_LE(equivalence_check(c, testing::Gen(99).vec(1000, -1, 1)), 1e-9);
}

TEST(Equivalence, BitIdenticalOnLargeSignals) {
  const CeController c = CeController::make(3.0, 60.0);
  EXPECT_EQ(equivalence_check(c, testing::Gen(7).vec(10000, -50, 50)), 0.0);
}

TEST(Equivalence, RandomPolesAndSeeds) {
  testing::for_all(40, 32, [](testing::Gen& g, int i) {
    const double a = g.uniform(-3, 3);
    const CeController c = CeController::make(a, 1.5 * (2.1 * a * a + 2));
    SCOPED_TRACE(i);
    EXPECT_LE(equivalence_check(c, g.vec(static_cast<std::size_t>(g.integer(1, 2000)), -4, 4)),
              1e-9);
  });
}

// Under a certified pair the larger past cost stays <= 0 and the smaller one
// stays below -P/(P-1) xhat^2.
TEST(MergedStep, CertifiedInvariantHolds) {
  testing::for_all(30, 33, [](testing::Gen& g, int) {
    const CeController& c = unit_pole();
    const double ratio = c.P / (c.P - 1.0);
    MergedState s;
    for (int t = 0; t < 300; ++t) {
      s = merged_step(c, s, g.uniform(-5, 5));
      ASSERT_LE(std::max(s.l1, s.lm1), 1e-9);
      ASSERT_LE(std::min(s.l1, s.lm1), -ratio * s.x_hat * s.x_hat + 1e-9);
    }
  });
}

}  // namespace
}  // namespace lerc
