#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bcrepair/random.hpp"
#include "bcrepair/rational.hpp"

namespace bcrepair {

using NodeId = int;
// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

struct SystemParams {
  int n = 0;
  int k = 0;
  int d = 0;
  int r = 0;
  Rational alpha{0};
  Rational beta{0};
  int T = 0;

  SystemParams with_storage(Rational a, Rational b) const {
    SystemParams p = *this;
    p.alpha = a;
    p.beta = b;
    return p;
  }
  SystemParams with_horizon(int rounds) const {
    SystemParams p = *this;
    p.T = rounds;
    return p;
  }
  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Every violated invariant, as readable rule strings. Empty means valid.
inline std::vector<std::string> validate_params(const SystemParams& p) {
  std::vector<std::string> v;
  if (p.n < 1) v.emplace_back("n >= 1");
  if (p.k < 1) v.emplace_back("k >= 1");
  if (p.d < 1) v.emplace_back("d >= 1");
  if (p.r < 1) v.emplace_back("r >= 1");
  if (p.T < 0) v.emplace_back("T >= 0");
  if (p.alpha < 0) v.emplace_back("alpha >= 0");
  if (p.beta < 0) v.emplace_back("beta >= 0");
  if (p.d < p.k) v.emplace_back("d >= k");
  if (p.r > p.n - p.d) v.emplace_back("r <= n - d");
  if (p.k > p.n) v.emplace_back("k <= n");
  return v;
}

inline void require_valid(const SystemParams& p) {
  const auto v = validate_params(p);
  if (v.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw std::invalid_argument(msg);
}

struct RepairRound {
  int s = 0;
  NodeSet failed;
  NodeSet newcomers;
  NodeSet helpers;
  friend bool operator==(const RepairRound&, const RepairRound&) = default;
};

struct Instance {
  SystemParams params;
  std::vector<RepairRound> rounds;
  friend bool operator==(const Instance&, const Instance&) = default;
};

// DC_{s,K}: a data collector joining after round s (0 = after initialization).
struct DataCollectorSpec {
  int s = 0;
  NodeSet nodes;
  friend bool operator==(const DataCollectorSpec&, const DataCollectorSpec&) = default;
  friend auto operator<=>(const DataCollectorSpec&, const DataCollectorSpec&) = default;
};

inline NodeSet make_node_set(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline bool contains(const NodeSet& set, NodeId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

inline NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const NodeSet& sub, const NodeSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// R_s = {n+(s-1)r+1, ..., n+sr}.
inline NodeSet newcomer_ids(const SystemParams& p, int s) {
  NodeSet out;
  for (int j = p.n + (s - 1) * p.r + 1; j <= p.n + s * p.r; ++j) out.push_back(j);
  return out;
}

inline NodeSet initial_nodes(const SystemParams& p) {
  NodeSet out;
  for (int j = 1; j <= p.n; ++j) out.push_back(j);
  return out;
}

// Total number of storage nodes that ever exist: initial plus all newcomers.
inline int node_count(const SystemParams& p) { return p.n + p.r * p.T; }

// Round in which a node was created (0 for the initial nodes).
inline int origin_round(const SystemParams& p, NodeId id) {
  if (id <= p.n) return 0;
  return (id - p.n - 1) / p.r + 1;
}

inline NodeSet active_after_step(const NodeSet& active, const RepairRound& round) {
  return set_union(set_difference(active, round.failed), round.newcomers);
}

// Nodes alive after round s.
inline NodeSet active_nodes(const Instance& inst, int s) {
  if (s < 0 || s > static_cast<int>(inst.rounds.size())) {
    throw std::out_of_range("round index " + std::to_string(s) + " outside 0.." +
                            std::to_string(inst.rounds.size()));
  }
  NodeSet active = initial_nodes(inst.params);
  for (int i = 0; i < s; ++i) active = active_after_step(active, inst.rounds[i]);
  return active;
}

inline std::vector<std::string> validate_instance(const Instance& inst) {
  auto v = validate_params(inst.params);
  if (!v.empty()) return v;
  const auto& p = inst.params;
  if (static_cast<int>(inst.rounds.size()) != p.T) {
    v.push_back("rounds.size() == T");
    return v;
  }
  NodeSet active = initial_nodes(p);
  for (int i = 0; i < p.T; ++i) {
    const auto& round = inst.rounds[i];
    const std::string tag = "round " + std::to_string(i + 1) + ": ";
    if (round.s != i + 1) v.push_back(tag + "index in order");
    for (const auto* set : {&round.failed, &round.newcomers, &round.helpers}) {
      if (!std::is_sorted(set->begin(), set->end()) ||
          std::adjacent_find(set->begin(), set->end()) != set->end()) {
        v.push_back(tag + "node sets sorted and duplicate-free");
      }
    }
    if (static_cast<int>(round.failed.size()) != p.r) v.push_back(tag + "|failed| == r");
    if (static_cast<int>(round.helpers.size()) != p.d) v.push_back(tag + "|helpers| == d");
    if (round.newcomers != newcomer_ids(p, i + 1)) v.push_back(tag + "newcomers == R_s");
    if (!is_subset(round.failed, active)) v.push_back(tag + "failed nodes active");
    const auto survivors = set_difference(active, round.failed);
    if (!is_subset(round.helpers, survivors)) v.push_back(tag + "helpers active and not failing");
    active = set_union(survivors, round.newcomers);
  }
  return v;
}

inline void require_valid(const Instance& inst) {
  const auto v = validate_instance(inst);
  if (v.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw std::invalid_argument(msg);
}

inline bool is_legitimate(const Instance& inst, const DataCollectorSpec& dc) {
  if (dc.s < 0 || dc.s > inst.params.T) return false;
  const NodeSet nodes = make_node_set(dc.nodes);
  if (nodes.size() != dc.nodes.size() || static_cast<int>(nodes.size()) != inst.params.k) return false;
  return is_subset(nodes, active_nodes(inst, dc.s));
}

// Visits every m-subset of `pool` in lexicographic order. The visitor returns
// false to stop; the function returns false if it was stopped.
template <typename Visitor>
bool for_each_combination(const NodeSet& pool, int m, Visitor&& visit) {
  const int n = static_cast<int>(pool.size());
  if (m < 0 || m > n) return true;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  NodeSet chosen(m);
  while (true) {
    for (int i = 0; i < m; ++i) chosen[i] = pool[idx[i]];
    if (!visit(static_cast<const NodeSet&>(chosen))) return false;
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct EnumerationScope {
  // 0 means unlimited.
  std::uint64_t limit = 0;
  // Exact symmetry reduction: nodes with the same origin round and the same
  // set of rounds they helped in are interchangeable, so only the number taken
  // from each such class matters and the lowest ids are used.
  bool canonical = false;
};

struct EnumerationStats {
  std::uint64_t count = 0;
  bool truncated = false;
};

namespace detail {

// Splits `pool` into interchangeability classes (lowest ids first inside
// each class). Classes are ordered by their smallest member.
inline std::vector<NodeSet> symmetry_classes(const SystemParams& p, const NodeSet& pool,
                                             const std::map<NodeId, std::uint64_t>& helped) {
  std::map<std::pair<int, std::uint64_t>, NodeSet> by_key;
  for (NodeId id : pool) {
    const auto it = helped.find(id);
    by_key[{origin_round(p, id), it == helped.end() ? 0 : it->second}].push_back(id);
  }
  std::vector<NodeSet> classes;
  for (auto& [key, members] : by_key) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(),
            [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return classes;
}

// Visits one representative subset of size m for every vector of per-class
// counts summing to m.
template <typename Visitor>
bool for_each_class_selection(const std::vector<NodeSet>& classes, int m, Visitor&& visit) {
  std::vector<NodeId> chosen;
  std::vector<int> suffix(classes.size() + 1, 0);
  for (int c = static_cast<int>(classes.size()) - 1; c >= 0; --c) {
    suffix[c] = suffix[c + 1] + static_cast<int>(classes[c].size());
  }
  auto rec = [&](auto&& self, std::size_t c, int remaining) -> bool {
    if (c == classes.size()) {
      if (remaining != 0) return true;
      return visit(make_node_set(chosen));
    }
    const int size = static_cast<int>(classes[c].size());
    const int lo = std::max(0, remaining - suffix[c + 1]);
    const int hi = std::min(size, remaining);
    for (int take = hi; take >= lo; --take) {
      for (int i = 0; i < take; ++i) chosen.push_back(classes[c][i]);
      const bool go_on = self(self, c + 1, remaining - take);
      chosen.resize(chosen.size() - take);
      if (!go_on) return false;
    }
    return true;
  };
  return rec(rec, 0, m);
}

}  // namespace detail

// Streams every valid instance of `p` to `visit(const Instance&)`, in a
// deterministic order. Failures are chosen first, then helpers, round by round.
template <typename Visitor>
EnumerationStats enumerate_instances(const SystemParams& p, const EnumerationScope& scope,
                                     Visitor&& visit) {
  require_valid(p);
  EnumerationStats stats;
  Instance inst{p, {}};
  std::map<NodeId, std::uint64_t> helped;

  auto choose = [&](const NodeSet& pool, int m, auto&& body) -> bool {
    if (!scope.canonical) return for_each_combination(pool, m, body);
    return detail::for_each_class_selection(detail::symmetry_classes(p, pool, helped), m, body);
  };

  auto rec = [&](auto&& self, int s, const NodeSet& active) -> bool {
    if (s > p.T) {
      if (scope.limit != 0 && stats.count == scope.limit) {
        stats.truncated = true;
        return false;
      }
      ++stats.count;
      visit(static_cast<const Instance&>(inst));
      return true;
    }
    return choose(active, p.r, [&](const NodeSet& failed) {
      const NodeSet survivors = set_difference(active, failed);
      return choose(survivors, p.d, [&](const NodeSet& helpers) {
        RepairRound round{s, failed, newcomer_ids(p, s), helpers};
        for (NodeId h : helpers) helped[h] |= std::uint64_t{1} << (s - 1);
        inst.rounds.push_back(round);
        const bool go_on = self(self, s + 1, set_union(survivors, round.newcomers));
        inst.rounds.pop_back();
        for (NodeId h : helpers) helped[h] &= ~(std::uint64_t{1} << (s - 1));
        return go_on;
      });
    });
  };
  if (scope.canonical && p.T > 64) throw std::invalid_argument("canonical enumeration supports T <= 64");
  rec(rec, 1, initial_nodes(p));
  return stats;
}

inline std::vector<Instance> collect_instances(const SystemParams& p, const EnumerationScope& scope,
                                               EnumerationStats* stats = nullptr) {
  std::vector<Instance> out;
  const auto st = enumerate_instances(p, scope, [&](const Instance& i) { out.push_back(i); });
  if (stats) *stats = st;
  return out;
}

// Streams DC_{s,K} for s = 0..T and every k-subset K of the nodes active after s.
template <typename Visitor>
void enumerate_collectors(const Instance& inst, Visitor&& visit) {
  NodeSet active = initial_nodes(inst.params);
  for (int s = 0; s <= inst.params.T; ++s) {
    if (s > 0) active = active_after_step(active, inst.rounds[s - 1]);
    for_each_combination(active, inst.params.k, [&](const NodeSet& K) {
      visit(DataCollectorSpec{s, K});
      return true;
    });
  }
}

// A uniformly random schedule: failures and helpers drawn uniformly per round.
template <typename Rng>
Instance random_instance(const SystemParams& p, Rng& rng) {
  require_valid(p);
  Instance inst{p, {}};
  NodeSet active = initial_nodes(p);
  auto sample = [&](NodeSet pool, int m) {
    shuffle_in_place(pool, rng);
    pool.resize(m);
    return make_node_set(std::move(pool));
  };
  for (int s = 1; s <= p.T; ++s) {
    RepairRound round;
    round.s = s;
    round.failed = sample(active, p.r);
    const NodeSet survivors = set_difference(active, round.failed);
    round.helpers = sample(survivors, p.d);
    round.newcomers = newcomer_ids(p, s);
    active = set_union(survivors, round.newcomers);
    inst.rounds.push_back(std::move(round));
  }
  return inst;
}

// The instance drawn in the introductory example: n=8, k=3, d=4, r=2, T=2;
// nodes 5 and 6 fail, then 8 and 10.
inline Instance figure1_instance(Rational alpha = 1, Rational beta = 1) {
  SystemParams p{8, 3, 4, 2, alpha, beta, 2};
  return Instance{p,
                  {RepairRound{1, {5, 6}, {9, 10}, {1, 2, 3, 4}},
                   RepairRound{2, {8, 10}, {11, 12}, {3, 4, 7, 9}}}};
}

}  // namespace bcrepair
