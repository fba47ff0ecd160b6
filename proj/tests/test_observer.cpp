#include <cmath>

#include <gtest/gtest.h>

#include "lerc/errors.hpp"
#include "lerc/observer.hpp"
#include "support.hpp"

namespace lerc {
namespace {

SolvedModel unit_pole(double b = 1.0) {
  return solve_riccati_or_throw(Model{1, b, 1}, 4.0);
}

TEST(ObserverStep, ZeroDynamics) {
  const ObserverState s = observer_step(ObserverState(unit_pole()), 0.0, 0.0);
  EXPECT_EQ(s.x_hat, 0.0);
  EXPECT_EQ(s.l, 0.0);
  EXPECT_EQ(s.t, 1);
}

TEST(ObserverStep, UnitMeasurement) {
  const ObserverState s = observer_step(ObserverState(unit_pole()), 0.0, 1.0);
  EXPECT_NEAR(s.x_hat, 0.64746096520390037478, 1e-15);
  EXPECT_NEAR(s.l, -5.640624556737594003, 1e-13);
}

TEST(ObserverStep, DeadBeatLandsOnZero) {
  ObserverState s(unit_pole());
  s.x_hat = 1.0;
  const double u = -(s.solved.a_hat * 1.0 + s.solved.g_hat * 0.0);
  const ObserverState next = observer_step(s, u, 0.0);
  EXPECT_EQ(next.x_hat, 0.0);
  EXPECT_NEAR(next.l, -5.895080176820150980, 1e-13);
}

TEST(ObserverStep, PastCostIgnoresInput) {
  testing::for_all(500, 21, [](testing::Gen& g, int) {
    ObserverState s(solve_riccati_or_throw(Model{g.uniform(-3, 3), 1, 1},
                                           g.uniform(1.5, 20)));
    s.x_hat = g.uniform(-5, 5);
    s.l = g.uniform(-5, 0);
    const double y = g.uniform(-5, 5);
    EXPECT_EQ(observer_step(s, g.uniform(-9, 9), y).l,
              observer_step(s, g.uniform(-9, 9), y).l);
  });
}

TEST(ObserverStep, ZeroEstimateNeverRaisesPastCost) {
  const SolvedModel m = unit_pole();
  for (double y = -10; y <= 10; y += 0.05) {
    const double l = observer_step(ObserverState(m), 0.0, y).l;
    const double expected = -16.0 * y * y * (m.P - 1) / m.X;
    EXPECT_LE(l, 0.0);
    EXPECT_NEAR(l, expected, 1e-12 * (1 + std::abs(expected)));
  }
}

TEST(AlphaClosedForm, MatchesStep) {
  ObserverState s(unit_pole());
  EXPECT_EQ(alpha_closed_form(s, 0.0), 0.0);
  EXPECT_NEAR(alpha_closed_form(s, 1.0), -5.640624556737594003, 1e-13);
  testing::for_all(200, 22, [&](testing::Gen& g, int) {
    s.x_hat = g.uniform(-3, 3);
    s.l = g.uniform(-3, 0);
    const double y = g.uniform(-3, 3);
    EXPECT_EQ(alpha_closed_form(s, y), observer_step(s, g.uniform(-1, 1), y).l);
  });
}

TEST(AlphaClosedForm, SubUnitPIsGainInfeasible) {
  SolvedModel m = unit_pole();
  m.P = 0.5;
  EXPECT_THROW(alpha_closed_form(ObserverState(m), 1.0), GainInfeasible);
}

// Second difference in y is <= 0 exactly when P >= 1.
TEST(AlphaClosedForm, ConcavityTracksP) {
  for (double gamma : {0.8, 0.9, 1.2, 2.0}) {
    ObserverState s(solve_riccati_or_throw(Model{0, 1, 1}, gamma));
    s.x_hat = 0.3;
    const double h = 0.5;
    const auto l = [&](double y) { return observer_step(s, 0.0, y).l; };
    const double second = l(1 + h) - 2 * l(1) + l(1 - h);
    if (s.solved.P >= 1.0) {
      EXPECT_LE(second, 0.0) << gamma;
      EXPECT_NO_THROW(alpha_closed_form(s, 1.0));
    } else {
      EXPECT_GT(second, 0.0) << gamma;
      EXPECT_THROW(alpha_closed_form(s, 1.0), GainInfeasible);
    }
  }
}

TEST(Bank, ZeroInputsStayAtRest) {
  const InformationState info =
      bank_step(InformationState::make(ModelSet::sign_pair(1.0), 4.0), 0.0, 0.0);
  ASSERT_EQ(info.bank.size(), 2u);
  EXPECT_EQ(info.t, 1);
  for (const auto& s : info.bank) {
    EXPECT_EQ(s.x_hat, 0.0);
    EXPECT_EQ(s.l, 0.0);
  }
}

TEST(Bank, InputSignSplitsEstimates) {
  const InformationState info =
      bank_step(InformationState::make(ModelSet::sign_pair(1.0), 4.0), 1.0, 0.0);
  EXPECT_EQ(info.bank[0].x_hat, 1.0);
  EXPECT_EQ(info.bank[1].x_hat, -1.0);
  EXPECT_EQ(info.bank[0].l, 0.0);
  EXPECT_EQ(info.bank[1].l, 0.0);
}

TEST(Bank, SingletonMatchesObserverStep) {
  const Model m{0.7, -1, 1.3};
  InformationState info = InformationState::make(ModelSet({m}), 3.0);
  ObserverState s(solve_riccati_or_throw(m, 3.0));
  testing::for_all(30, 23, [&](testing::Gen& g, int) {
    const double u = g.uniform(-1, 1), y = g.uniform(-1, 1);
    info = bank_step(info, u, y);
    s = observer_step(s, u, y);
    EXPECT_EQ(info.bank[0].x_hat, s.x_hat);
    EXPECT_EQ(info.bank[0].l, s.l);
  });
}

TEST(Bank, InfeasibleMemberIsContractError) {
  EXPECT_THROW(InformationState::make(ModelSet::sign_pair(1.0), 1.0), ContractError);
}

TEST(FiniteGain, SignTest) {
  InformationState info = InformationState::make(ModelSet::sign_pair(1.0), 4.0);
  EXPECT_TRUE(finite_gain_ok(info));
  info.bank[0].l = -5.64;
  info.bank[1].l = -3.2;
  EXPECT_TRUE(finite_gain_ok(info));
  info.bank[1].l = 0.001;
  EXPECT_FALSE(finite_gain_ok(info));
  info.bank[1].l = 1e-10;
  EXPECT_TRUE(finite_gain_ok(info));
}

}  // namespace
}  // namespace lerc
