#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bcrepair/flowgraph.hpp"
#include "bcrepair/model.hpp"
#include "bcrepair/rational.hpp"

namespace bcrepair {

// Minimization variables of the closed-form bound over rounds 1..horizon.
// Rounds in `x` form T1 (cut after their in-vertices); the other rounds form
// T2 (all of their vertices on the collector side).
struct CutProfile {
  int horizon = 0;
  int x0 = 0;
  std::map<int, int> x;

  bool in_t1(int s) const { return x.count(s) != 0; }

  std::vector<int> t1() const {
    std::vector<int> out;
    for (const auto& [s, v] : x) out.push_back(s);
    return out;
  }
  std::vector<int> t2() const {
    std::vector<int> out;
    for (int s = 1; s <= horizon; ++s) {
      if (!in_t1(s)) out.push_back(s);
    }
    return out;
  }

  // m*_s: x0 for s = 0, x_s on T1, r on T2.
  int m_star(int s, int r) const {
    if (s == 0) return x0;
    const auto it = x.find(s);
    return it == x.end() ? r : it->second;
  }

  // Sum of m*_i over all rounds 0..horizon.
  int total(int r) const {
    int sum = 0;
    for (int s = 0; s <= horizon; ++s) sum += m_star(s, r);
    return sum;
  }

  // Tie-break key: (|T1|, x0, then the (s, x_s) pairs).
  auto order_key() const { return std::make_tuple(x.size(), x0, std::vector<std::pair<int, int>>(x.begin(), x.end())); }

  friend bool operator==(const CutProfile&, const CutProfile&) = default;
};

// value = a * alpha + b * beta.
struct LinearForm {
  int a = 0;
  int b = 0;

  Rational evaluate(const Rational& alpha, const Rational& beta) const { return alpha * a + beta * b; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
};

struct BoundResult {
  Rational value{0};
  CutProfile argmin;
  LinearForm linear_form;
};

inline int effective_horizon(const SystemParams& p) {
  require_valid(p);
  return std::min(p.T, p.k + p.r);
}

// Constraints on x0, x_s and the total sum of m*.
inline bool is_feasible(const SystemParams& p, const CutProfile& prof) {
  if (prof.x0 < 0 || prof.x0 > p.n) return false;
  for (const auto& [s, v] : prof.x) {
    if (s < 1 || s > prof.horizon || v < 0 || v > p.r) return false;
  }
  const int total = prof.total(p.r);
  return p.k <= total && total <= p.k + p.r;
}

// (a, b) of the bound objective: alpha counts x0 and x_s over T1; beta counts
// max(0, d - sum_{i<s} m*_i) over T2.
inline LinearForm profile_form(const SystemParams& p, const CutProfile& prof) {
  LinearForm f{prof.x0, 0};
  int cumulative = prof.x0;
  for (int s = 1; s <= prof.horizon; ++s) {
    const auto it = prof.x.find(s);
    if (it != prof.x.end()) {
      f.a += it->second;
      cumulative += it->second;
    } else {
      f.b += std::max(0, p.d - cumulative);
      cumulative += p.r;
    }
  }
  return f;
}

// Visits every feasible profile over the given horizon. Branches whose
// partial sum already exceeds k + r, or cannot reach k, are cut off.
template <typename Visitor>
void enumerate_profiles(const SystemParams& p, int horizon, Visitor&& visit) {
  CutProfile prof;
  prof.horizon = horizon;
  const int upper = p.k + p.r;
  auto rec = [&](auto&& self, int s, int cumulative) -> void {
    if (cumulative > upper) return;
    if (cumulative + (horizon - s + 1) * p.r < p.k) return;
    if (s > horizon) {
      visit(static_cast<const CutProfile&>(prof));
      return;
    }
    self(self, s + 1, cumulative + p.r);  // s in T2
    for (int v = 0; v <= p.r; ++v) {
      prof.x[s] = v;
      self(self, s + 1, cumulative + v);
    }
    prof.x.erase(s);
  };
  for (int x0 = 0; x0 <= std::min(p.n, upper); ++x0) {
    prof.x0 = x0;
    rec(rec, 1, x0);
  }
}

// Every distinct linear form reachable by a feasible profile, each with its
// smallest profile under CutProfile::order_key.
inline std::map<LinearForm, CutProfile> profile_forms(const SystemParams& p, int horizon) {
  require_valid(p);
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  std::map<LinearForm, CutProfile> forms;
  enumerate_profiles(p, horizon, [&](const CutProfile& prof) {
    const auto f = profile_form(p, prof);
    const auto it = forms.find(f);
    if (it == forms.end()) {
      forms.emplace(f, prof);
    } else if (prof.order_key() < it->second.order_key()) {
      it->second = prof;
    }
  });
  if (forms.empty()) throw std::logic_error("bound constraints infeasible");
  return forms;
}

inline BoundResult minimize_over_forms(const std::map<LinearForm, CutProfile>& forms, const Rational& alpha,
                                       const Rational& beta) {
  const BoundResult* best = nullptr;
  BoundResult result;
  for (const auto& [form, prof] : forms) {
    const Rational v = form.evaluate(alpha, beta);
    if (best == nullptr || v < result.value || (v == result.value && prof.order_key() < result.argmin.order_key())) {
      result = BoundResult{v, prof, form};
      best = &result;
    }
  }
  return result;
}

// The bound over an explicit horizon, without the truncation shortcut.
inline BoundResult c_lb_at_horizon(const SystemParams& p, int horizon) {
  return minimize_over_forms(profile_forms(p, horizon), p.alpha, p.beta);
}

// C_LB(T), evaluated at min(T, k + r) rounds.
inline BoundResult c_lb(const SystemParams& p) { return c_lb_at_horizon(p, effective_horizon(p)); }

struct TruncationReport {
  std::vector<int> horizons;
  std::vector<Rational> values;
  bool all_equal = true;
};

// Raw bound at horizons k+r, ..., k+r+extra; all must agree.
inline TruncationReport verify_truncation(const SystemParams& p, int extra) {
  require_valid(p);
  if (extra < 0) throw std::invalid_argument("extra must be nonnegative");
  TruncationReport report;
  for (int h = p.k + p.r; h <= p.k + p.r + extra; ++h) {
    report.horizons.push_back(h);
    report.values.push_back(c_lb_at_horizon(p, h).value);
    if (report.values.back() != report.values.front()) report.all_equal = false;
  }
  return report;
}

// Pads a profile to a longer horizon with T1 rounds of x = 0; the objective
// and the sum constraint are unchanged.
inline CutProfile extend_profile(CutProfile prof, int horizon) {
  for (int s = prof.horizon + 1; s <= horizon; ++s) prof.x[s] = 0;
  prof.horizon = std::max(prof.horizon, horizon);
  return prof;
}

struct AdversarialCertificate {
  Instance instance;
  DataCollectorSpec collector;
  // Survivor sets M_0, ..., M_T.
  std::vector<NodeSet> survivors;
  FlowGraph graph;
  Cut cut;
};

inline bool tightness_applies(const SystemParams& p) { return p.n >= p.k + 2 * p.r; }

// Builds the worst-case schedule for a profile: the failure pattern keeps
// exactly m*_s nodes of each round alive, helpers are drawn from those
// survivors first, and the collector reads only survivors. "Any" choices
// take the lowest ids.
inline AdversarialCertificate adversarial_instance(const SystemParams& p, const CutProfile& profile) {
  require_valid(p);
  if (!tightness_applies(p)) throw std::invalid_argument("adversarial construction requires n >= k + 2r");
  const CutProfile prof = extend_profile(profile, p.T);
  if (prof.horizon != p.T) throw std::invalid_argument("profile horizon exceeds T");
  if (!is_feasible(p, prof)) throw std::invalid_argument("profile violates the bound constraints");

  // Active nodes of N outside M_0, lowest id first.
  NodeSet spare = initial_nodes(p);
  auto take_spare = [&](int count) {
    if (count > static_cast<int>(spare.size())) throw std::logic_error("ran out of initial nodes");
    NodeSet out(spare.begin(), spare.begin() + count);
    spare.erase(spare.begin(), spare.begin() + count);
    return out;
  };

  std::vector<NodeSet> survivors(p.T + 1);
  NodeSet pending_failures = take_spare(p.r);
  survivors[0] = take_spare(prof.x0);

  Instance inst{p, {}};
  for (int s = 1; s <= p.T; ++s) {
    RepairRound round;
    round.s = s;
    round.failed = pending_failures;
    round.newcomers = newcomer_ids(p, s);

    NodeSet helpers;
    for (int i = 0; i < s && static_cast<int>(helpers.size()) < p.d; ++i) {
      for (NodeId id : survivors[i]) {
        if (static_cast<int>(helpers.size()) == p.d) break;
        helpers.push_back(id);
      }
    }
    for (NodeId id : spare) {
      if (static_cast<int>(helpers.size()) == p.d) break;
      helpers.push_back(id);
    }
    if (static_cast<int>(helpers.size()) != p.d) throw std::logic_error("not enough helpers");
    round.helpers = make_node_set(std::move(helpers));

    const int keep = prof.m_star(s, p.r);
    survivors[s] = NodeSet(round.newcomers.begin(), round.newcomers.begin() + keep);
    if (s < p.T) {
      NodeSet next = take_spare(prof.in_t1(s) ? keep : p.r);
      for (auto it = round.newcomers.begin() + keep; it != round.newcomers.end(); ++it) next.push_back(*it);
      pending_failures = make_node_set(std::move(next));
    }
    inst.rounds.push_back(std::move(round));
  }

  NodeSet pool;
  for (const auto& m : survivors) pool = set_union(pool, m);
  if (static_cast<int>(pool.size()) < p.k) throw std::logic_error("fewer than k survivors");
  DataCollectorSpec dc{p.T, NodeSet(pool.begin(), pool.begin() + p.k)};

  FlowGraph g(inst, dc);
  Cut cut{std::vector<bool>(g.vertex_count(), true)};
  cut.source_side[g.sink()] = false;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = g.vertices()[v];
    if (vx.round < 1 || prof.in_t1(vx.round)) continue;
    cut.source_side[v] = false;
  }
  for (int s = 0; s <= p.T; ++s) {
    if (s > 0 && !prof.in_t1(s)) continue;
    for (NodeId id : survivors[s]) cut.source_side[g.out_vertex(id)] = false;
  }
  return AdversarialCertificate{std::move(inst), std::move(dc), std::move(survivors), std::move(g), std::move(cut)};
}

// Per-round quantities of a finite cut. Rounds with an auxiliary vertex on
// the source side form T'_1, the rest T'_2.
struct RoundTerms {
  int s = 0;
  bool in_t1 = false;
  int x = 0;  // out-vertices on the collector side with in-vertex in X
  int y = 0;  // T'_2: aux vertices whose parent out-vertex is in X
  int z = 0;  // T'_1: aux on the collector side with parent in X
  int v = 0;  // T'_2: out on the collector side with in-vertex in X
  int m = 0;  // out-vertices on the collector side
  Capacity contribution;
  Rational formula{0};
};

struct CutCaseTerms {
  std::vector<RoundTerms> rounds;  // index = round s, 0..T
  Capacity original;
  Cut canonical;
  Capacity canonical_capacity;
  // x0*a + sum_{T1} x_s*a + sum_{T2} y_s*b for the canonical cut.
  Rational reduced_value{0};
  bool formulas_hold = true;
  bool dominance_holds = true;
};

inline CutCaseTerms case_terms(const FlowGraph& g, const Cut& c) {
  const auto& p = g.params();
  CutCaseTerms out;
  out.original = cut_capacity(g, c);
  if (out.original.is_infinite()) throw std::invalid_argument("case analysis needs a finite cut");

  const auto& verts = g.vertices();
  auto parent_of = [&](int v) { return g.edges()[g.in_edges(v).front()].from; };
  out.rounds.resize(p.T + 1);
  for (int s = 0; s <= p.T; ++s) out.rounds[s].s = s;

  for (int v = 0; v < g.vertex_count(); ++v) {
    if (verts[v].kind == Vertex::Kind::Aux && c.contains(v)) out.rounds[verts[v].round].in_t1 = true;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = verts[v];
    if (vx.round < 0) continue;
    auto& t = out.rounds[vx.round];
    if (vx.kind == Vertex::Kind::Out && !c.contains(v)) {
      ++t.m;
      if (c.contains(parent_of(v))) {
        ++t.x;
        ++t.v;
      }
    } else if (vx.kind == Vertex::Kind::Aux && c.contains(parent_of(v))) {
      if (!c.contains(v)) ++t.z;
      ++t.y;
    }
  }

  out.canonical = c;
  for (auto& t : out.rounds) {
    t.contribution = round_contribution(g, c, t.s);
    if (t.s == 0) {
      t.formula = p.alpha * t.x;
    } else if (t.in_t1) {
      t.formula = p.alpha * t.x + p.beta * t.z;
      out.reduced_value += p.alpha * t.x;
    } else {
      t.formula = p.alpha * t.v + p.beta * t.y;
      out.reduced_value += p.beta * t.y;
    }
    if (t.s == 0) out.reduced_value += p.alpha * t.x;
    if (!(t.contribution == Capacity(t.formula))) out.formulas_hold = false;
    // y and v are only meaningful on T'_2; x and z only on round 0 and T'_1.
    if (t.s == 0 || t.in_t1) {
      t.y = 0;
      t.v = 0;
    } else {
      t.x = 0;
      t.z = 0;
    }
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = verts[v];
    if (vx.round < 1) continue;
    if (out.rounds[vx.round].in_t1 && vx.kind == Vertex::Kind::Aux) out.canonical.source_side[v] = true;
    if (!out.rounds[vx.round].in_t1 && vx.kind == Vertex::Kind::In) out.canonical.source_side[v] = false;
  }
  out.canonical_capacity = cut_capacity(g, out.canonical);
  out.dominance_holds = out.canonical_capacity <= out.original &&
                        out.canonical_capacity == Capacity(out.reduced_value);
  return out;
}

}  // namespace bcrepair
