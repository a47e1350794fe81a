#include <gtest/gtest.h>

#include <sstream>

#include "bcrepair/tradeoff.hpp"

namespace bcrepair {
namespace {

const SystemParams kFig4{15, 4, 9, 2, 0, 0, 6};

TEST(TauOf, BroadcastCountsEachTransmissionOnce) {
  EXPECT_EQ(tau_of(4, 2, 1), 2);
  EXPECT_EQ(tau_of(9, 2, Rational(1, 14)), Rational(9, 28));
  EXPECT_EQ(tau_of(SystemParams{8, 3, 4, 2, 1, 0, 2}), 0);
}

TEST(EndpointFormulas, Figure4Values) {
  EXPECT_EQ(ms_point(RepairScheme::Broadcast, 4, 9, 2, 1), (TradeoffPoint{Rational(9, 28), Rational(1, 4), Rational(1, 14)}));
  EXPECT_EQ(ms_point(RepairScheme::Cooperative, 4, 9, 2, 1).tau, Rational(5, 14));
  EXPECT_EQ(ms_point(RepairScheme::Cooperative, 4, 9, 2, 1).alpha, Rational(1, 4));
  const auto mtb = mt_point(RepairScheme::Broadcast, 4, 9, 2, 1);
  EXPECT_EQ(mtb.tau, Rational(9, 32));
  EXPECT_EQ(mtb.alpha, Rational(9, 32));
  EXPECT_EQ(mtb.beta, Rational(1, 16));
  const auto mtc = mt_point(RepairScheme::Cooperative, 4, 9, 2, 1);
  EXPECT_EQ(mtc.tau, Rational(19, 64));
  EXPECT_EQ(mtc.alpha, Rational(19, 64));
}

TEST(EndpointFormulas, SchemesCoincideForSingleFailures) {
  for (int k = 1; k <= 5; ++k)
    for (int d = k; d <= k + 4; ++d) {
      EXPECT_EQ(ms_point(RepairScheme::Broadcast, k, d, 1, 3), ms_point(RepairScheme::Cooperative, k, d, 1, 3));
      EXPECT_EQ(mt_point(RepairScheme::Broadcast, k, d, 1, 3), mt_point(RepairScheme::Cooperative, k, d, 1, 3));
    }
}

TEST(EndpointFormulas, RejectDegenerateDenominators) {
  EXPECT_THROW(ms_point(RepairScheme::Broadcast, 5, 2, 3, 1), std::invalid_argument);
  EXPECT_THROW(mt_point(RepairScheme::Broadcast, 9, 2, 1, 1), std::invalid_argument);
}

TEST(Dominance, Figure4Gaps) {
  const auto rep = dominance_report(4, 9, 2, 1);
  EXPECT_EQ(rep.ms_gap, Rational(1, 28));
  EXPECT_EQ(rep.mt_gap, Rational(1, 64));
  EXPECT_TRUE(rep.broadcast_dominates);
  EXPECT_TRUE(rep.warnings.empty());
}

TEST(Dominance, ZeroGapsForSingleFailures) {
  const auto rep = dominance_report(4, 6, 1, 1);
  EXPECT_EQ(rep.ms_gap, 0);
  EXPECT_EQ(rep.mt_gap, 0);
  EXPECT_FALSE(rep.broadcast_dominates);
}

TEST(Dominance, PositiveOnMultipleOfRGrid) {
  for (int u : {2, 3})
    for (int r : {2, 3}) {
      const int k = u * r;
      for (int d = k; d <= k + 4; ++d) {
        const auto rep = dominance_report(k, d, r, 1);
        EXPECT_GT(rep.ms_gap, 0);
        EXPECT_GT(rep.mt_gap, 0);
        EXPECT_TRUE(rep.warnings.empty());
      }
    }
}

TEST(SweepCurve, AutoGridHitsBothBroadcastEndpoints) {
  const auto curve = sweep_curve(kFig4, 1);
  ASSERT_GE(curve.points.size(), 33u);
  EXPECT_EQ(curve.points.front(), mt_point(RepairScheme::Broadcast, 4, 9, 2, 1));
  EXPECT_EQ(curve.points.back(), ms_point(RepairScheme::Broadcast, 4, 9, 2, 1));
}

TEST(SweepCurve, PointsSitExactlyOnTheBound) {
  const auto curve = sweep_curve(kFig4, 1);
  const auto forms = profile_forms(kFig4, effective_horizon(kFig4));
  const Rational eps(1, 1000000);
  for (const auto& pt : curve.points) {
    EXPECT_EQ(pt.tau, tau_of(kFig4.d, kFig4.r, pt.beta));
    EXPECT_EQ(minimize_over_forms(forms, pt.alpha, pt.beta).value, 1);
    EXPECT_LT(minimize_over_forms(forms, pt.alpha - eps, pt.beta).value, 1);
  }
}

TEST(SweepCurve, NonincreasingAndConvex) {
  for (const auto& p : {kFig4, SystemParams{8, 3, 4, 2, 0, 0, 5}, SystemParams{12, 4, 6, 2, 0, 0, 6}}) {
    const auto pts = sweep_curve(p, 1).points;
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i].alpha, pts[i - 1].alpha);
    // Equal spacing in beta: second differences are nonnegative.
    for (std::size_t i = 2; i < pts.size(); ++i) {
      EXPECT_GE(pts[i].alpha - pts[i - 1].alpha * 2 + pts[i - 2].alpha, 0);
    }
  }
}

TEST(SweepCurve, LargeBetaIsStorageLimited) {
  const auto curve = sweep_curve(kFig4, 1, {1, 5});
  for (const auto& pt : curve.points) EXPECT_EQ(pt.alpha, Rational(1, 4));
}

TEST(SweepCurve, ZeroFileNeedsNoStorage) {
  const auto curve = sweep_curve(kFig4, 0, {0, Rational(1, 10), 2});
  for (const auto& pt : curve.points) EXPECT_EQ(pt.alpha, 0);
  EXPECT_EQ(sweep_curve(kFig4, 0).points.size(), 1u);
}

TEST(SweepCurve, RejectsBetaBelowFeasibleRange) {
  EXPECT_THROW(sweep_curve(kFig4, 1, {Rational(1, 17)}), std::domain_error);
}

TEST(SweepCurve, ScalesWithFileSize) {
  const auto one = sweep_curve(kFig4, 1);
  const auto two = sweep_curve(kFig4, 2);
  ASSERT_EQ(one.points.size(), two.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    EXPECT_EQ(two.points[i].alpha, one.points[i].alpha * 2);
    EXPECT_EQ(two.points[i].tau, one.points[i].tau * 2);
  }
}

TEST(CurveOutput, DelimitedRowsWithFractionsAndDecimals) {
  std::ostringstream os;
  write_curve_dsv(os, sweep_curve(kFig4, 1, {Rational(1, 14)}));
  const auto text = os.str();
  EXPECT_NE(text.find("# n=15 k=4 d=9 r=2 T=6 B=1\n"), std::string::npos);
  EXPECT_NE(text.find("series,tau,alpha,beta,tau_decimal,alpha_decimal,beta_decimal\n"), std::string::npos);
  EXPECT_NE(text.find("broadcast,9/28,1/4,1/14,0.321428571429,0.25,0.0714285714286\n"), std::string::npos);
}

}  // namespace
}  // namespace bcrepair
