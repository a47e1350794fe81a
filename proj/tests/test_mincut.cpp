#include <gtest/gtest.h>

#include "bcrepair/capacity_bound.hpp"
#include "bcrepair/mincut.hpp"
#include "oracles.hpp"

namespace bcrepair {
namespace {

// Parameter sets whose graphs have at most 20 vertices.
const std::vector<SystemParams> kSmall = {
    {4, 2, 2, 1, 1, 1, 2}, {3, 1, 1, 1, 1, 1, 3}, {5, 2, 3, 1, 1, 1, 1},
    {4, 2, 3, 1, 1, 1, 1}, {5, 3, 3, 2, 1, 1, 1}, {4, 1, 2, 2, 1, 1, 1},
};

const std::vector<Rational> kValues = {0, Rational(1, 4), Rational(1, 3), 1, Rational(3, 2), 4};

TEST(MaxFlowMinCut, MatchesBruteForceOnRandomSmallGraphs) {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    auto p = kSmall[uniform_below(rng, kSmall.size())];
    p.alpha = kValues[uniform_below(rng, kValues.size())];
    p.beta = kValues[uniform_below(rng, kValues.size())];
    const auto inst = random_instance(p, rng);
    std::vector<DataCollectorSpec> dcs;
    enumerate_collectors(inst, [&](const DataCollectorSpec& dc) { dcs.push_back(dc); });
    const auto& dc = dcs[uniform_below(rng, dcs.size())];
    const FlowGraph g(inst, dc);
    ASSERT_LE(g.vertex_count(), 20);
    const auto mc = max_flow_min_cut(g);
    EXPECT_EQ(mc.value, oracle::brute_force_min_cut(g));
    EXPECT_EQ(cut_capacity(g, mc.cut), mc.value);
  }
}

TEST(MaxFlowMinCut, NoRoundsGivesKAlpha) {
  const Instance inst{SystemParams{5, 3, 3, 1, Rational(2, 3), 1, 0}, {}};
  enumerate_collectors(inst, [&](const DataCollectorSpec& dc) {
    EXPECT_EQ(max_flow_min_cut(FlowGraph(inst, dc)).value, Capacity(Rational(2)));
  });
}

TEST(MaxFlowMinCut, ZeroAlphaGivesZero) {
  const auto inst = figure1_instance(0, 5);
  EXPECT_EQ(max_flow_min_cut(FlowGraph(inst, {2, {9, 11, 12}})).value, Capacity(0));
}

TEST(MaxFlowMinCut, ExampleCollectorBelowDrawnCuts) {
  const FlowGraph g(figure1_instance(1, 1), {2, {9, 11, 12}});
  const auto mc = max_flow_min_cut(g);
  EXPECT_LE(mc.value, Capacity(4));
  EXPECT_EQ(mc.value, Capacity(3));
}

TEST(MaxFlowMinCut, NeverExceedsAnyCut) {
  const FlowGraph g(figure1_instance(Rational(1, 2), Rational(1, 3)), {2, {3, 9, 12}});
  const auto mc = max_flow_min_cut(g);
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    Cut c{std::vector<bool>(g.vertex_count())};
    for (int v = 0; v < g.vertex_count(); ++v) c.source_side[v] = uniform_below(rng, 2) == 1;
    c.source_side[g.source()] = true;
    c.source_side[g.sink()] = false;
    EXPECT_LE(mc.value, cut_capacity(g, c));
  }
}

TEST(MaxFlowMinCut, HomogeneousInAlphaBeta) {
  const DataCollectorSpec dc{2, {4, 11, 12}};
  for (const Rational scale : {Rational(1, 3), Rational(2), Rational(7, 5)}) {
    const auto base = max_flow_min_cut(FlowGraph(figure1_instance(Rational(3, 4), Rational(1, 6)), dc)).value;
    const auto scaled =
        max_flow_min_cut(FlowGraph(figure1_instance(Rational(3, 4) * scale, Rational(1, 6) * scale), dc)).value;
    EXPECT_EQ(scaled, Capacity(base.value() * scale));
  }
}

TEST(InstanceCapacity, NoRoundsGivesKAlpha) {
  const Instance inst{SystemParams{6, 3, 3, 2, Rational(5, 2), 1, 0}, {}};
  EXPECT_EQ(instance_capacity(inst).value, Capacity(Rational(15, 2)));
}

TEST(InstanceCapacity, ExampleInstanceFullEnumeration) {
  const auto r = instance_capacity(figure1_instance(1, 1));
  EXPECT_EQ(r.collectors_examined, 168u);
  EXPECT_EQ(r.value, Capacity(3));
  EXPECT_GT(r.value, Capacity(0));
}

TEST(InstanceCapacity, DistinctSetPruningAgreesWithFullEnumeration) {
  Rng rng(99);
  for (int t = 0; t < 15; ++t) {
    SystemParams p{7, 3, 3, 2, kValues[uniform_below(rng, kValues.size())], kValues[uniform_below(rng, kValues.size())], 2};
    const auto inst = random_instance(p, rng);
    const auto full = instance_capacity(inst, CollectorPruning::None);
    const auto fast = instance_capacity(inst, CollectorPruning::DistinctSets);
    EXPECT_EQ(full.value, fast.value);
    EXPECT_EQ(full.witness_collector, fast.witness_collector);
    EXPECT_LE(fast.collectors_examined, full.collectors_examined);
  }
}

TEST(InstanceCapacity, ZeroBetaCapsCollectorsReadingNewcomers) {
  // With beta = 0 a newcomer carries nothing, so a collector holding one
  // newcomer sees at most (k-1) alpha.
  const auto inst = figure1_instance(1, 0);
  const DataCollectorSpec dc{1, {1, 2, 9}};
  EXPECT_LE(max_flow_min_cut(FlowGraph(inst, dc)).value, Capacity(2));
  EXPECT_LE(instance_capacity(inst).value, Capacity(2));
}

TEST(StorageCapacity, FullScopeEqualsBoundOnSmallSystem) {
  const SystemParams p{5, 2, 3, 1, 1, 1, 1};
  const auto r = storage_capacity(p, {});
  EXPECT_EQ(r.instances_examined, 20u);
  EXPECT_FALSE(r.truncated);
  EXPECT_EQ(r.value, Capacity(2));
  EXPECT_EQ(r.value, Capacity(c_lb(p).value));
}

TEST(StorageCapacity, NoRoundsGivesKAlpha) {
  EXPECT_EQ(storage_capacity(SystemParams{6, 3, 3, 2, 2, 1, 0}, {}).value, Capacity(6));
}

TEST(StorageCapacity, CanonicalScopeMatchesFullScope) {
  for (const auto& p : {SystemParams{6, 2, 3, 2, 1, Rational(1, 4), 2}, SystemParams{6, 2, 3, 1, 1, 1, 2},
                        SystemParams{6, 3, 3, 1, 1, Rational(1, 2), 2}}) {
    const auto full = storage_capacity(p, {});
    const auto canon = storage_capacity(p, {0, true});
    EXPECT_EQ(full.value, canon.value);
    EXPECT_LT(canon.instances_examined, full.instances_examined);
  }
}

TEST(StorageCapacity, AdversarialScope) {
  const SystemParams p{8, 3, 4, 2, 1, Rational(1, 4), 2};
  const auto cert = adversarial_instance(p, c_lb(p).argmin);
  const auto r = storage_capacity_over({cert.instance});
  EXPECT_EQ(r.value, Capacity(Rational(3, 2)));
}

TEST(StorageCapacity, LimitReportsTruncation) {
  const auto r = storage_capacity(SystemParams{5, 2, 3, 1, 1, 1, 1}, {3, false});
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.instances_examined, 3u);
  EXPECT_GE(r.value, Capacity(2));
}

}  // namespace
}  // namespace bcrepair
