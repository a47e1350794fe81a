#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcrepair/model.hpp"
#include "bcrepair/rational.hpp"

namespace bcrepair {

struct Vertex {
  enum class Kind { Source, In, Out, Aux, Collector };
  Kind kind = Kind::Source;
  // Storage node id for In/Out, helper id for Aux.
  NodeId node = 0;
  // Round the vertex belongs to (V_0..V_T); -1 for source and collector.
  int round = -1;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct CapEdge {
  int from = 0;
  int to = 0;
  Capacity cap;
};

// Information flow graph for one instance and one data collector. Vertices
// are stored in a topological order: source, round 0, round 1, ..., round T,
// collector.
class FlowGraph {
 public:
  FlowGraph(const Instance& inst, const DataCollectorSpec& dc)
      : params_(inst.params), collector_{dc.s, make_node_set(dc.nodes)} {
    require_valid(inst);
    if (!is_legitimate(inst, dc)) {
      throw std::invalid_argument("collector references an inactive node or has |K| != k");
    }
    const auto& p = inst.params;
    source_ = add_vertex({Vertex::Kind::Source, 0, -1});
    for (NodeId j : initial_nodes(p)) add_storage_node(j, 0);
    for (int j = 1; j <= p.n; ++j) add_edge(source_, in_.at(j), Capacity::infinity());
    for (const auto& round : inst.rounds) {
      std::vector<int> aux_ids;
      for (NodeId i : round.helpers) {
        const int a = add_vertex({Vertex::Kind::Aux, i, round.s});
        aux_.emplace(std::make_pair(i, round.s), a);
        aux_ids.push_back(a);
        add_edge(out_.at(i), a, Capacity(p.beta));
      }
      for (NodeId j : round.newcomers) add_storage_node(j, round.s);
      for (int a : aux_ids) {
        for (NodeId j : round.newcomers) add_edge(a, in_.at(j), Capacity::infinity());
      }
    }
    sink_ = add_vertex({Vertex::Kind::Collector, 0, -1});
    for (NodeId j : collector_.nodes) add_edge(out_.at(j), sink_, Capacity::infinity());
  }

  const SystemParams& params() const { return params_; }
  const DataCollectorSpec& collector() const { return collector_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<CapEdge>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int source() const { return source_; }
  int sink() const { return sink_; }

  int in_vertex(NodeId j) const { return in_.at(j); }
  int out_vertex(NodeId j) const { return out_.at(j); }
  int aux_vertex(NodeId helper, int s) const { return aux_.at({helper, s}); }
  bool has_aux(NodeId helper, int s) const { return aux_.count({helper, s}) != 0; }

  const std::vector<int>& out_edges(int v) const { return out_adj_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_adj_[v]; }

  std::string label(int v) const {
    const auto& x = vertices_[v];
    switch (x.kind) {
      case Vertex::Kind::Source: return "S";
      case Vertex::Kind::In: return "in:" + std::to_string(x.node);
      case Vertex::Kind::Out: return "out:" + std::to_string(x.node);
      case Vertex::Kind::Aux: return "aux:" + std::to_string(x.node) + ":" + std::to_string(x.round);
      case Vertex::Kind::Collector: {
        std::string s = "dc:" + std::to_string(collector_.s) + ":";
        for (std::size_t i = 0; i < collector_.nodes.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(collector_.nodes[i]);
        }
        return s;
      }
    }
    return {};
  }

  // Inverse of label().
  int find(const std::string& lbl) const {
    auto fail = [&]() -> int { throw std::invalid_argument("no vertex labelled '" + lbl + "'"); };
    if (lbl == "S") return source_;
    if (lbl == label(sink_)) return sink_;
    try {
      if (lbl.rfind("in:", 0) == 0) return in_.at(std::stoi(lbl.substr(3)));
      if (lbl.rfind("out:", 0) == 0) return out_.at(std::stoi(lbl.substr(4)));
      if (lbl.rfind("aux:", 0) == 0) {
        const auto colon = lbl.find(':', 4);
        if (colon == std::string::npos) return fail();
        return aux_.at({std::stoi(lbl.substr(4, colon - 4)), std::stoi(lbl.substr(colon + 1))});
      }
    } catch (const std::logic_error&) {
    }
    return fail();
  }

  // One edge per line: "<from> <to> <capacity>", capacity as p/q or "inf".
  void write_edge_list(std::ostream& os) const {
    for (const auto& e : edges_) os << label(e.from) << ' ' << label(e.to) << ' ' << e.cap << '\n';
  }

  std::string edge_list() const {
    std::ostringstream os;
    write_edge_list(os);
    return os.str();
  }

  // Kahn's algorithm; true if the graph has no directed cycle.
  bool is_acyclic() const {
    std::vector<int> indeg(vertices_.size(), 0);
    for (const auto& e : edges_) ++indeg[e.to];
    std::queue<int> ready;
    for (int v = 0; v < vertex_count(); ++v) {
      if (indeg[v] == 0) ready.push(v);
    }
    int seen = 0;
    while (!ready.empty()) {
      const int v = ready.front();
      ready.pop();
      ++seen;
      for (int e : out_adj_[v]) {
        if (--indeg[edges_[e].to] == 0) ready.push(edges_[e].to);
      }
    }
    return seen == vertex_count();
  }

 private:
  int add_vertex(Vertex v) {
    vertices_.push_back(v);
    out_adj_.emplace_back();
    in_adj_.emplace_back();
    return static_cast<int>(vertices_.size()) - 1;
  }

  void add_edge(int from, int to, Capacity cap) {
    edges_.push_back({from, to, cap});
    out_adj_[from].push_back(static_cast<int>(edges_.size()) - 1);
    in_adj_[to].push_back(static_cast<int>(edges_.size()) - 1);
  }

  void add_storage_node(NodeId j, int round) {
    const int in = add_vertex({Vertex::Kind::In, j, round});
    const int out = add_vertex({Vertex::Kind::Out, j, round});
    in_.emplace(j, in);
    out_.emplace(j, out);
    add_edge(in, out, Capacity(params_.alpha));
  }

  SystemParams params_;
  DataCollectorSpec collector_;
  std::vector<Vertex> vertices_;
  std::vector<CapEdge> edges_;
  std::vector<std::vector<int>> out_adj_;
  std::vector<std::vector<int>> in_adj_;
  std::map<NodeId, int> in_;
  std::map<NodeId, int> out_;
  std::map<std::pair<NodeId, int>, int> aux_;
  int source_ = 0;
  int sink_ = 0;
};

inline FlowGraph build_graph(const Instance& inst, const DataCollectorSpec& dc) { return FlowGraph(inst, dc); }

// Closed-form sizes of the graph built for (n, k, r, d, T).
inline int expected_vertex_count(const SystemParams& p) {
  return 1 + 2 * (p.n + p.r * p.T) + p.d * p.T + 1;
}
inline int expected_edge_count(const SystemParams& p) {
  return p.n + (p.n + p.r * p.T) + p.d * p.T + p.d * p.T * p.r + p.k;
}

// An S-DC cut: the source-side vertex set X, as a membership mask.
struct Cut {
  std::vector<bool> source_side;

  bool contains(int v) const { return source_side[v]; }
  friend bool operator==(const Cut&, const Cut&) = default;
};

inline bool is_valid_cut(const FlowGraph& g, const Cut& c) {
  return static_cast<int>(c.source_side.size()) == g.vertex_count() && c.source_side[g.source()] &&
         !c.source_side[g.sink()];
}

inline void require_valid_cut(const FlowGraph& g, const Cut& c) {
  if (!is_valid_cut(g, c)) throw std::invalid_argument("not an S-DC cut of this graph");
}

// X = everything except the listed vertices (which must not include S).
inline Cut cut_excluding(const FlowGraph& g, const std::vector<std::string>& sink_side_labels) {
  Cut c{std::vector<bool>(g.vertex_count(), true)};
  c.source_side[g.sink()] = false;
  for (const auto& l : sink_side_labels) c.source_side[g.find(l)] = false;
  require_valid_cut(g, c);
  return c;
}

// X = the source plus the listed vertices.
inline Cut cut_including(const FlowGraph& g, const std::vector<std::string>& source_side_labels) {
  Cut c{std::vector<bool>(g.vertex_count(), false)};
  c.source_side[g.source()] = true;
  for (const auto& l : source_side_labels) c.source_side[g.find(l)] = true;
  require_valid_cut(g, c);
  return c;
}

inline std::vector<std::string> source_side_labels(const FlowGraph& g, const Cut& c) {
  std::vector<std::string> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (c.source_side[v]) out.push_back(g.label(v));
  }
  return out;
}

// Sum of capacities of edges leaving X.
inline Capacity cut_capacity(const FlowGraph& g, const Cut& c) {
  require_valid_cut(g, c);
  Capacity total;
  for (const auto& e : g.edges()) {
    if (c.source_side[e.from] && !c.source_side[e.to]) total += e.cap;
  }
  return total;
}

// Capacity of cut edges whose head lies in round s (the vertex set V_s).
inline Capacity round_contribution(const FlowGraph& g, const Cut& c, int s) {
  require_valid_cut(g, c);
  if (s < 0 || s > g.params().T) throw std::out_of_range("round index out of range");
  Capacity total;
  for (const auto& e : g.edges()) {
    if (c.source_side[e.from] && !c.source_side[e.to] && g.vertices()[e.to].round == s) total += e.cap;
  }
  return total;
}

// Capacity of cut edges into the collector; attributed to no round.
inline Capacity collector_contribution(const FlowGraph& g, const Cut& c) {
  require_valid_cut(g, c);
  Capacity total;
  for (int e : g.in_edges(g.sink())) {
    if (c.source_side[g.edges()[e].from]) total += g.edges()[e].cap;
  }
  return total;
}

}  // namespace bcrepair
