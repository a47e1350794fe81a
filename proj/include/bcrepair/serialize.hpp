#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bcrepair/capacity_bound.hpp"
#include "bcrepair/flowgraph.hpp"
#include "bcrepair/mincut.hpp"
#include "bcrepair/model.hpp"
#include "bcrepair/rlnc_sim.hpp"
#include "bcrepair/tradeoff.hpp"

// Structured documents exchanged by the command-line tool. Fractions are
// always "p/q" strings.
namespace bcrepair {

using json = nlohmann::ordered_json;

inline json to_json(const SystemParams& p) {
  return json{{"n", p.n},
              {"k", p.k},
              {"d", p.d},
              {"r", p.r},
              {"alpha", to_string(p.alpha)},
              {"beta", to_string(p.beta)},
              {"T", p.T}};
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected a fraction string, got " + j.dump());
}

inline SystemParams params_from_json(const json& j) {
  SystemParams p;
  p.n = j.at("n").get<int>();
  p.k = j.at("k").get<int>();
  p.d = j.at("d").get<int>();
  p.r = j.at("r").get<int>();
  p.alpha = rational_from_json(j.at("alpha"));
  p.beta = rational_from_json(j.at("beta"));
  p.T = j.at("T").get<int>();
  return p;
}

inline json to_json(const Instance& inst) {
  json rounds = json::array();
  for (const auto& r : inst.rounds) {
    rounds.push_back(json{{"s", r.s}, {"failed", r.failed}, {"newcomers", r.newcomers}, {"helpers", r.helpers}});
  }
  return json{{"params", to_json(inst.params)}, {"rounds", rounds}};
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  inst.params = params_from_json(j.at("params"));
  for (const auto& r : j.at("rounds")) {
    RepairRound round;
    round.s = r.at("s").get<int>();
    round.failed = make_node_set(r.at("failed").get<std::vector<NodeId>>());
    round.newcomers = make_node_set(r.at("newcomers").get<std::vector<NodeId>>());
    round.helpers = make_node_set(r.at("helpers").get<std::vector<NodeId>>());
    inst.rounds.push_back(std::move(round));
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
  }
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline json to_json(const DataCollectorSpec& dc) { return json{{"s", dc.s}, {"K", dc.nodes}}; }

inline json to_json(const CutProfile& prof) {
  json x = json::object();
  for (const auto& [s, v] : prof.x) x[std::to_string(s)] = v;
  return json{{"T1", prof.t1()}, {"x0", prof.x0}, {"x", x}};
}

inline json to_json(const BoundResult& b) {
  json j{{"value", to_string(b.value)}};
  const auto prof = to_json(b.argmin);
  for (const auto& [key, val] : prof.items()) j[key] = val;
  j["linear_form"] = json{{"a", b.linear_form.a}, {"b", b.linear_form.b}};
  return j;
}

inline json to_json(const CapacityReport& r) {
  json j{{"value", to_string(r.value)}};
  if (r.witness_instance) {
    const FlowGraph g(*r.witness_instance, r.witness_collector);
    j["witness_cut"] = source_side_labels(g, r.witness_cut);
  } else {
    j["witness_cut"] = json::array();
  }
  j["witness_collector"] = to_json(r.witness_collector);
  if (r.witness_instance) j["witness_instance"] = to_json(*r.witness_instance);
  j["instances_examined"] = r.instances_examined;
  j["collectors_examined"] = r.collectors_examined;
  j["truncated"] = r.truncated;
  return j;
}

inline json to_json(const TruncationReport& t) {
  json values = json::array();
  for (const auto& v : t.values) values.push_back(to_string(v));
  return json{{"horizons", t.horizons}, {"values", values}, {"all_equal", t.all_equal}};
}

inline json to_json(const TradeoffPoint& pt) {
  return json{{"tau", to_string(pt.tau)}, {"alpha", to_string(pt.alpha)}, {"beta", to_string(pt.beta)}};
}

inline json to_json(const DominanceReport& d) {
  return json{{"ms_broadcast", to_json(d.ms_broadcast)},   {"mt_broadcast", to_json(d.mt_broadcast)},
              {"ms_cooperative", to_json(d.ms_cooperative)}, {"mt_cooperative", to_json(d.mt_cooperative)},
              {"ms_gap", to_string(d.ms_gap)},               {"mt_gap", to_string(d.mt_gap)},
              {"broadcast_dominates", d.broadcast_dominates}, {"warnings", d.warnings}};
}

inline json to_json(const ExperimentReport& r) {
  json config{{"params", to_json(r.config.params)},
              {"B", r.file_size},
              {"field", "GF(2^" + std::to_string(r.config.field_width) + ")"},
              {"trials", r.config.trials},
              {"seed", r.config.seed}};
  json per = json::array();
  for (const auto& c : r.per_collector) {
    per.push_back(json{{"collector", to_json(c.collector)},
                       {"min_cut", to_string(c.min_cut)},
                       {"decodable_rate", c.rate()}});
  }
  return json{{"config", config},
              {"instance", to_json(r.instance)},
              {"success_rate", r.success_rate()},
              {"min_collector_rate", r.min_collector_rate()},
              {"per_collector", per},
              {"violations", r.violations}};
}

}  // namespace bcrepair
