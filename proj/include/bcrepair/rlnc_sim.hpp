#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcrepair/capacity_bound.hpp"
#include "bcrepair/flowgraph.hpp"
#include "bcrepair/galois_field.hpp"
#include "bcrepair/mincut.hpp"
#include "bcrepair/model.hpp"
#include "bcrepair/random.hpp"

namespace bcrepair {

struct CodedPacket {
  std::vector<Symbol> coeffs;   // length B
  std::vector<Symbol> payload;  // empty in coefficient-only mode
};

struct NodeStore {
  NodeId id = 0;
  std::vector<CodedPacket> packets;
};

struct SimConfig {
  // alpha and beta must be nonnegative integers here.
  SystemParams params;
  // File size in packets; empty means "use C_LB of params".
  std::optional<int> file_size;
  int field_width = 8;
  int trials = 100;
  std::uint64_t seed = 1;
  // Symbols per packet when payloads are simulated; 0 = coefficient-only.
  int payload_symbols = 0;
};

inline std::vector<std::string> validate_config(const SimConfig& cfg) {
  auto v = validate_params(cfg.params);
  if (!is_integer(cfg.params.alpha)) v.emplace_back("alpha is an integer");
  if (!is_integer(cfg.params.beta)) v.emplace_back("beta is an integer");
  if (cfg.file_size && *cfg.file_size < 0) v.emplace_back("B >= 0");
  if (cfg.trials < 1) v.emplace_back("trials >= 1");
  if (cfg.field_width != 4 && cfg.field_width != 8 && cfg.field_width != 16) v.emplace_back("field in {4, 8, 16}");
  if (cfg.payload_symbols < 0) v.emplace_back("payload_symbols >= 0");
  return v;
}

inline int resolved_file_size(const SimConfig& cfg) {
  if (cfg.file_size) return *cfg.file_size;
  const Rational b = c_lb(cfg.params).value;
  if (!is_integer(b)) throw std::logic_error("bound is not an integer for integer alpha, beta");
  return static_cast<int>(b.numerator());
}

// Storage state of one simulated system.
class SimState {
 public:
  SimState(const GaloisField& field, int file_size, std::vector<std::vector<Symbol>> file = {})
      : field_(&field), file_size_(file_size), file_(std::move(file)) {}

  const GaloisField& field() const { return *field_; }
  int file_size() const { return file_size_; }
  const std::vector<std::vector<Symbol>>& file() const { return file_; }
  bool has_payload() const { return !file_.empty(); }

  const std::map<NodeId, NodeStore>& nodes() const { return nodes_; }
  std::map<NodeId, NodeStore>& nodes() { return nodes_; }

  const NodeStore& node(NodeId id) const {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::out_of_range("node " + std::to_string(id) + " is not active");
    return it->second;
  }

  // A uniformly random linear combination of `sources`.
  template <typename Engine>
  CodedPacket combine(const std::vector<const CodedPacket*>& sources, Engine& rng) const {
    CodedPacket out;
    out.coeffs.assign(file_size_, 0);
    if (has_payload()) out.payload.assign(file_.front().size(), 0);
    for (const auto* src : sources) {
      const auto c = static_cast<Symbol>(uniform_below(rng, field_->size()));
      if (c == 0) continue;
      for (int j = 0; j < file_size_; ++j) out.coeffs[j] ^= field_->mul(c, src->coeffs[j]);
      for (std::size_t j = 0; j < out.payload.size(); ++j) out.payload[j] ^= field_->mul(c, src->payload[j]);
    }
    return out;
  }

  // A packet with uniformly random coefficients over the original file.
  template <typename Engine>
  CodedPacket fresh(Engine& rng) const {
    CodedPacket out;
    out.coeffs.resize(file_size_);
    for (auto& c : out.coeffs) c = static_cast<Symbol>(uniform_below(rng, field_->size()));
    if (has_payload()) {
      out.payload.assign(file_.front().size(), 0);
      for (int i = 0; i < file_size_; ++i) {
        for (std::size_t j = 0; j < out.payload.size(); ++j) out.payload[j] ^= field_->mul(out.coeffs[i], file_[i][j]);
      }
    }
    return out;
  }

 private:
  const GaloisField* field_;
  int file_size_;
  std::vector<std::vector<Symbol>> file_;
  std::map<NodeId, NodeStore> nodes_;
};

// Each of the n initial nodes stores alpha packets with independent uniform
// coefficient vectors.
template <typename Engine>
SimState init_storage(const SimConfig& cfg, const GaloisField& field, int file_size, Engine& rng) {
  const auto v = validate_config(cfg);
  if (!v.empty()) throw std::invalid_argument("invalid simulation config: " + v.front());
  std::vector<std::vector<Symbol>> file;
  if (cfg.payload_symbols > 0 && file_size > 0) {
    file.assign(file_size, std::vector<Symbol>(cfg.payload_symbols));
    for (auto& row : file) {
      for (auto& s : row) s = static_cast<Symbol>(uniform_below(rng, field.size()));
    }
  }
  SimState state(field, file_size, std::move(file));
  const int alpha = static_cast<int>(cfg.params.alpha.numerator());
  for (NodeId j : initial_nodes(cfg.params)) {
    NodeStore store{j, {}};
    for (int i = 0; i < alpha; ++i) store.packets.push_back(state.fresh(rng));
    state.nodes().emplace(j, std::move(store));
  }
  return state;
}

// Failed nodes leave; each helper broadcasts beta combinations of its packets;
// every newcomer hears all d*beta broadcasts and keeps alpha combinations.
template <typename Engine>
void run_repair_round(SimState& state, const SystemParams& p, const RepairRound& round, Engine& rng) {
  for (NodeId id : round.failed) {
    if (state.nodes().erase(id) == 0) throw std::invalid_argument("failed node " + std::to_string(id) + " not active");
  }
  const int alpha = static_cast<int>(p.alpha.numerator());
  const int beta = static_cast<int>(p.beta.numerator());
  std::vector<CodedPacket> broadcast;
  for (NodeId h : round.helpers) {
    const auto it = state.nodes().find(h);
    if (it == state.nodes().end()) throw std::invalid_argument("helper " + std::to_string(h) + " not active");
    std::vector<const CodedPacket*> stored;
    for (const auto& pk : it->second.packets) stored.push_back(&pk);
    for (int i = 0; i < beta; ++i) broadcast.push_back(state.combine(stored, rng));
  }
  std::vector<const CodedPacket*> heard;
  for (const auto& pk : broadcast) heard.push_back(&pk);
  for (NodeId j : round.newcomers) {
    NodeStore store{j, {}};
    for (int i = 0; i < alpha; ++i) store.packets.push_back(state.combine(heard, rng));
    state.nodes().emplace(j, std::move(store));
  }
}

inline int collector_rank(const SimState& state, const NodeSet& nodes) {
  std::vector<std::vector<Symbol>> rows;
  for (NodeId id : nodes) {
    for (const auto& pk : state.node(id).packets) rows.push_back(pk.coeffs);
  }
  if (state.file_size() == 0) return 0;
  return matrix_rank(state.field(), std::move(rows));
}

inline bool dc_decodable(const SimState& state, const NodeSet& nodes) {
  return collector_rank(state, nodes) >= state.file_size();
}

// Recovers the original file from the collector's packets (payload mode).
inline std::optional<std::vector<std::vector<Symbol>>> decode_file(const SimState& state, const NodeSet& nodes) {
  if (!state.has_payload()) throw std::logic_error("decode_file needs payload mode");
  const auto& f = state.field();
  const int b = state.file_size();
  std::vector<std::vector<Symbol>> rows;
  for (NodeId id : nodes) {
    for (const auto& pk : state.node(id).packets) {
      auto row = pk.coeffs;
      row.insert(row.end(), pk.payload.begin(), pk.payload.end());
      rows.push_back(std::move(row));
    }
  }
  int rank = 0;
  for (int c = 0; c < b; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) return std::nullopt;
    std::swap(rows[rank], rows[pivot]);
    const Symbol inv = f.inv(rows[rank][c]);
    for (auto& v : rows[rank]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == static_cast<std::size_t>(rank) || rows[i][c] == 0) continue;
      const Symbol factor = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] ^= f.mul(factor, rows[rank][j]);
    }
    ++rank;
  }
  std::vector<std::vector<Symbol>> file;
  for (int i = 0; i < b; ++i) file.emplace_back(rows[i].begin() + b, rows[i].end());
  return file;
}

enum class InstanceSource { Adversarial, Random };

// The schedule an experiment runs on. Adversarial uses the bound's argmin;
// random draws one schedule from the seed.
inline Instance experiment_instance(const SimConfig& cfg, InstanceSource source) {
  if (source == InstanceSource::Adversarial) {
    return adversarial_instance(cfg.params, c_lb(cfg.params).argmin).instance;
  }
  Rng rng(mix_seed(cfg.seed, ~std::uint64_t{0}));
  return random_instance(cfg.params, rng);
}

struct CollectorOutcome {
  DataCollectorSpec collector;
  Rational min_cut{0};
  int successes = 0;
  int trials = 0;
  double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

struct ExperimentReport {
  SimConfig config;
  int file_size = 0;
  Instance instance;
  std::vector<CollectorOutcome> per_collector;
  std::uint64_t decodes = 0;
  std::uint64_t attempts = 0;
  std::vector<std::string> violations;

  double success_rate() const { return attempts ? static_cast<double>(decodes) / attempts : 0.0; }
  double min_collector_rate() const {
    double m = 1.0;
    for (const auto& c : per_collector) m = std::min(m, c.rate());
    return m;
  }
};

// Runs cfg.trials independent trials of the schedule and checks every
// collector. Trial t uses its own generator seeded by mix_seed(seed, t), so
// results do not depend on evaluation order. A collector whose coefficient
// rank exceeds its exact min cut is recorded as a violation.
inline ExperimentReport achievability_experiment(const SimConfig& cfg, const Instance& inst) {
  const auto v = validate_config(cfg);
  if (!v.empty()) throw std::invalid_argument("invalid simulation config: " + v.front());
  require_valid(inst);
  if (!(inst.params == cfg.params)) throw std::invalid_argument("instance parameters differ from the config");

  ExperimentReport report;
  report.config = cfg;
  report.file_size = resolved_file_size(cfg);
  report.instance = inst;

  std::map<NodeSet, Rational> cut_by_set;
  enumerate_collectors(inst, [&](const DataCollectorSpec& dc) {
    auto it = cut_by_set.find(dc.nodes);
    if (it == cut_by_set.end()) {
      it = cut_by_set.emplace(dc.nodes, max_flow_min_cut(FlowGraph(inst, dc)).value.value()).first;
    }
    report.per_collector.push_back(CollectorOutcome{dc, it->second, 0, 0});
  });

  const GaloisField field(cfg.field_width);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    SimState state = init_storage(cfg, field, report.file_size, rng);
    std::size_t next = 0;
    for (int s = 0; s <= inst.params.T; ++s) {
      if (s > 0) run_repair_round(state, inst.params, inst.rounds[s - 1], rng);
      for (; next < report.per_collector.size() && report.per_collector[next].collector.s == s; ++next) {
        auto& outcome = report.per_collector[next];
        const int rank = collector_rank(state, outcome.collector.nodes);
        const bool ok = rank >= report.file_size;
        ++outcome.trials;
        ++report.attempts;
        if (ok) {
          ++outcome.successes;
          ++report.decodes;
        }
        if (Rational(rank) > outcome.min_cut) {
          report.violations.push_back("trial " + std::to_string(t) + " collector s=" + std::to_string(s) +
                                      ": rank " + std::to_string(rank) + " > min cut " + to_string(outcome.min_cut));
        }
      }
    }
  }
  return report;
}

inline ExperimentReport achievability_experiment(const SimConfig& cfg, InstanceSource source) {
  return achievability_experiment(cfg, experiment_instance(cfg, source));
}

}  // namespace bcrepair
