#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "bcrepair/flowgraph.hpp"
#include "bcrepair/model.hpp"
#include "bcrepair/rational.hpp"

namespace bcrepair {

struct MinCutResult {
  Capacity value;
  Cut cut;
};

namespace detail {

// Dinic's algorithm on integer capacities.
class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), next_(n) {}

  void add_edge(int from, int to, std::int64_t cap) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  std::int64_t run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (const std::int64_t pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += pushed;
    }
    return flow;
  }

  // Vertices reachable from s in the residual graph (valid after run()).
  std::vector<bool> residual_reachable(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int a : adj_[v]) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int a : adj_[v]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (auto& i = next_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      const int a = adj_[v][i];
      const int w = arcs_[a].to;
      if (arcs_[a].cap <= 0 || level_[w] != level_[v] + 1) continue;
      if (const std::int64_t got = dfs(w, t, std::min(limit, arcs_[a].cap))) {
        arcs_[a].cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace detail

// Exact min cut. Rational capacities are scaled to integers by the LCM of
// the denominators of alpha and beta; Infinity edges get a capacity larger
// than the sum of all finite capacities.
inline MinCutResult max_flow_min_cut(const FlowGraph& g) {
  const auto& p = g.params();
  const std::int64_t scale = lcm_of_denominators({p.alpha, p.beta});
  auto scaled = [&](const Rational& q) { return q.numerator() * (scale / q.denominator()); };

  std::int64_t finite_total = 0;
  for (const auto& e : g.edges()) {
    if (e.cap.is_finite()) finite_total += scaled(e.cap.value());
  }
  const std::int64_t infinite = finite_total + 1;

  detail::Dinic dinic(g.vertex_count());
  for (const auto& e : g.edges()) {
    dinic.add_edge(e.from, e.to, e.cap.is_infinite() ? infinite : scaled(e.cap.value()));
  }
  const std::int64_t flow = dinic.run(g.source(), g.sink());
  MinCutResult result;
  result.cut.source_side = dinic.residual_reachable(g.source());
  result.value = flow >= infinite ? Capacity::infinity() : Capacity(Rational(flow, scale));
  return result;
}

enum class CollectorPruning {
  // Every (s, K) of the instance.
  None,
  // The graph of DC_{s,K} does not depend on s, so each K is solved once
  // (at its earliest s). Gives the same value and witness as None.
  DistinctSets,
};

struct CapacityReport {
  Capacity value = Capacity::infinity();
  DataCollectorSpec witness_collector;
  std::optional<Instance> witness_instance;
  Cut witness_cut;
  std::uint64_t instances_examined = 0;
  std::uint64_t collectors_examined = 0;
  bool truncated = false;
};

// C'(I): the minimum over all legitimate collectors of the collector's min cut.
// Ties keep the first collector in (s, K) order.
inline CapacityReport instance_capacity(const Instance& inst, CollectorPruning pruning = CollectorPruning::None) {
  require_valid(inst);
  CapacityReport report;
  std::set<NodeSet> seen;
  enumerate_collectors(inst, [&](const DataCollectorSpec& dc) {
    if (pruning == CollectorPruning::DistinctSets && !seen.insert(dc.nodes).second) return;
    ++report.collectors_examined;
    const FlowGraph g(inst, dc);
    auto mc = max_flow_min_cut(g);
    if (report.collectors_examined == 1 || mc.value < report.value) {
      report.value = mc.value;
      report.witness_collector = dc;
      report.witness_cut = std::move(mc.cut);
    }
  });
  report.instances_examined = 1;
  return report;
}

// Min of instance capacities over a list of instances (first minimum wins).
inline CapacityReport storage_capacity_over(const std::vector<Instance>& instances,
                                            CollectorPruning pruning = CollectorPruning::DistinctSets) {
  CapacityReport best;
  std::uint64_t collectors = 0;
  for (const auto& inst : instances) {
    auto r = instance_capacity(inst, pruning);
    collectors += r.collectors_examined;
    if (!best.witness_instance || r.value < best.value) {
      best = std::move(r);
      best.witness_instance = inst;
    }
  }
  best.instances_examined = instances.size();
  best.collectors_examined = collectors;
  return best;
}

// C_storage over the enumerated instance scope; reports truncation when the
// scope's limit cut the enumeration short.
inline CapacityReport storage_capacity(const SystemParams& p, const EnumerationScope& scope,
                                       CollectorPruning pruning = CollectorPruning::DistinctSets) {
  CapacityReport best;
  std::uint64_t collectors = 0;
  const auto stats = enumerate_instances(p, scope, [&](const Instance& inst) {
    auto r = instance_capacity(inst, pruning);
    collectors += r.collectors_examined;
    if (!best.witness_instance || r.value < best.value) {
      best = std::move(r);
      best.witness_instance = inst;
    }
  });
  best.instances_examined = stats.count;
  best.collectors_examined = collectors;
  best.truncated = stats.truncated;
  return best;
}

}  // namespace bcrepair
