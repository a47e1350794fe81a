#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bcrepair/model.hpp"
#include "oracles.hpp"

namespace bcrepair {
namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TEST(ValidateParams, ExampleSystemIsValid) {
  EXPECT_TRUE(validate_params({8, 3, 4, 2, 1, 1, 2}).empty());
}

TEST(ValidateParams, ReportsEachViolation) {
  EXPECT_TRUE(has(validate_params({5, 3, 4, 2, 1, 1, 1}), "r <= n - d"));
  EXPECT_TRUE(has(validate_params({8, 5, 4, 2, 1, 1, 1}), "d >= k"));
  const auto many = validate_params({3, 5, 4, 2, -1, 1, 1});
  EXPECT_TRUE(has(many, "k <= n"));
  EXPECT_TRUE(has(many, "alpha >= 0"));
  EXPECT_TRUE(has(many, "r <= n - d"));
}

TEST(ActiveNodes, FollowsExampleSchedule) {
  const auto inst = figure1_instance();
  EXPECT_EQ(active_nodes(inst, 0), (NodeSet{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(active_nodes(inst, 1), (NodeSet{1, 2, 3, 4, 7, 8, 9, 10}));
  EXPECT_EQ(active_nodes(inst, 2), (NodeSet{1, 2, 3, 4, 7, 9, 11, 12}));
  EXPECT_THROW(active_nodes(inst, 3), std::out_of_range);
  EXPECT_THROW(active_nodes(inst, -1), std::out_of_range);
}

TEST(ValidateInstance, CatchesBrokenSchedules) {
  auto inst = figure1_instance();
  EXPECT_TRUE(validate_instance(inst).empty());
  inst.rounds[1].helpers = {3, 4, 7, 10};  // 10 fails before round 2
  EXPECT_FALSE(validate_instance(inst).empty());
  inst = figure1_instance();
  inst.rounds[1].failed = {5, 8};  // 5 already failed
  EXPECT_FALSE(validate_instance(inst).empty());
  inst = figure1_instance();
  inst.rounds[0].newcomers = {10, 11};
  EXPECT_FALSE(validate_instance(inst).empty());
}

TEST(EnumerateInstances, EmptyScheduleWhenNoRounds) {
  int seen = 0;
  const auto stats = enumerate_instances(SystemParams{5, 2, 3, 1, 1, 1, 0}, {}, [&](const Instance& i) {
    EXPECT_TRUE(i.rounds.empty());
    ++seen;
  });
  EXPECT_EQ(seen, 1);
  EXPECT_EQ(stats.count, 1u);
  EXPECT_FALSE(stats.truncated);
}

TEST(EnumerateInstances, FullCountIsProductOfBinomials) {
  // One round: C(5,1) failures x C(4,3) helpers.
  EXPECT_EQ(collect_instances(SystemParams{5, 2, 3, 1, 1, 1, 1}, {}).size(), 20u);
  // Two rounds: the active set stays n, so each round contributes C(n,r) C(n-r,d).
  const SystemParams p{6, 2, 3, 2, 1, 1, 2};
  const auto per_round = oracle::binomial(6, 2) * oracle::binomial(4, 3);
  EXPECT_EQ(collect_instances(p, {}).size(), per_round * per_round);
}

TEST(EnumerateInstances, ExampleInstanceIsInTheStream) {
  const auto target = figure1_instance();
  bool found = false;
  enumerate_instances(target.params, {}, [&](const Instance& i) { found = found || i == target; });
  EXPECT_TRUE(found);
}

TEST(EnumerateInstances, LimitFlagsTruncation) {
  const SystemParams p{5, 2, 3, 1, 1, 1, 1};
  EnumerationStats stats;
  EXPECT_EQ(collect_instances(p, {7, false}, &stats).size(), 7u);
  EXPECT_TRUE(stats.truncated);
  collect_instances(p, {20, false}, &stats);
  EXPECT_FALSE(stats.truncated);
}

TEST(EnumerateInstances, CanonicalIsSmallerAndValid) {
  const SystemParams p{7, 2, 3, 2, 1, 1, 2};
  const auto full = collect_instances(p, {});
  const auto canon = collect_instances(p, {0, true});
  EXPECT_LT(canon.size(), full.size());
  for (const auto& inst : canon) EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(EnumerateInstances, GeneratedInstancesSatisfyInvariants) {
  for (const bool canonical : {false, true}) {
    const SystemParams p{6, 2, 3, 2, 1, 1, 2};
    enumerate_instances(p, {0, canonical}, [&](const Instance& inst) {
      ASSERT_TRUE(validate_instance(inst).empty());
      NodeId last_newcomer = p.n;
      for (int s = 0; s <= p.T; ++s) EXPECT_EQ(static_cast<int>(active_nodes(inst, s).size()), p.n);
      for (const auto& round : inst.rounds) {
        const auto before = active_nodes(inst, round.s - 1);
        EXPECT_TRUE(is_subset(round.helpers, set_difference(before, round.failed)));
        EXPECT_GT(round.newcomers.front(), last_newcomer);
        last_newcomer = round.newcomers.back();
      }
    });
  }
}

TEST(EnumerateCollectors, CountsAllArrivalsAndSubsets) {
  const auto inst = figure1_instance();
  std::vector<DataCollectorSpec> all;
  enumerate_collectors(inst, [&](const DataCollectorSpec& dc) { all.push_back(dc); });
  EXPECT_EQ(all.size(), 3u * oracle::binomial(8, 3));
  EXPECT_NE(std::find(all.begin(), all.end(), DataCollectorSpec{2, {9, 11, 12}}), all.end());
  for (const auto& dc : all) EXPECT_TRUE(is_legitimate(inst, dc));
}

TEST(EnumerateCollectors, SingleCollectorWhenKEqualsN) {
  Instance inst{SystemParams{3, 3, 3, 0, 1, 1, 0}, {}};
  // r = 0 is rejected by validation, but collectors only need the node list.
  int count = 0;
  enumerate_collectors(inst, [&](const DataCollectorSpec& dc) {
    EXPECT_EQ(dc, (DataCollectorSpec{0, {1, 2, 3}}));
    ++count;
  });
  EXPECT_EQ(count, 1);
}

TEST(RandomInstance, IsValidAndSeedDeterministic) {
  const SystemParams p{8, 3, 4, 2, 1, 1, 4};
  Rng a(7), b(7);
  const auto x = random_instance(p, a);
  EXPECT_TRUE(validate_instance(x).empty());
  EXPECT_EQ(x, random_instance(p, b));
}

}  // namespace
}  // namespace bcrepair
