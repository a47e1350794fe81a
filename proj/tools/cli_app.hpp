#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcrepair/bcrepair.hpp"

namespace bcrepair::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kAssertion = 2, kInfeasible = 3 };

struct Options {
  std::optional<int> n, k, d, r, T;
  std::optional<std::string> alpha, beta;
  std::string file_size = "1";
  std::uint64_t seed = 1;
  int trials = 100;
  int field = 8;
  std::string scope;
  std::string grid = "auto";
  std::string format = "human";
  std::string instance_path;
  std::uint64_t limit = 0;
  int extra = 2;
  bool b_given = false;
};

// Thrown for failed internal cross-checks (exit code 2).
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters from flags, with the given defaults for unset flags.
inline SystemParams params_from(const Options& o, const SystemParams& defaults) {
  SystemParams p = defaults;
  if (o.n) p.n = *o.n;
  if (o.k) p.k = *o.k;
  if (o.d) p.d = *o.d;
  if (o.r) p.r = *o.r;
  if (o.T) p.T = *o.T;
  if (o.alpha) p.alpha = parse_rational(*o.alpha);
  if (o.beta) p.beta = parse_rational(*o.beta);
  require_valid(p);
  return p;
}

inline const SystemParams kExampleParams{8, 3, 4, 2, 1, 1, 2};
inline const SystemParams kFigure4Params{15, 4, 9, 2, Rational(1, 4), Rational(1, 14), 6};

inline std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  if (text == "auto" || text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "{" + s + "}";
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  bool machine() const { return o_.format == "machine"; }

  void emit(const json& doc) {
    out_ << doc.dump(machine() ? -1 : 2) << '\n';
  }

  int bound() {
    const auto p = params_from(o_, kExampleParams);
    const auto b = c_lb(p);
    if (!machine()) {
      out_ << "C_LB = " << to_string(b.value) << "  (horizon " << effective_horizon(p) << ")\n";
      out_ << "argmin: T1=" << join(b.argmin.t1()) << " x0=" << b.argmin.x0 << '\n';
      out_ << "linear form: " << b.linear_form.a << "*alpha + " << b.linear_form.b << "*beta\n";
    }
    emit(to_json(b));
    return kOk;
  }

  int mincut() {
    CapacityReport report;
    if (!o_.instance_path.empty()) {
      const Instance inst = load_instance(o_.instance_path);
      require_valid(inst);
      report = instance_capacity(inst, CollectorPruning::DistinctSets);
      report.witness_instance = inst;
    } else {
      const auto p = params_from(o_, kExampleParams);
      const std::string scope = o_.scope.empty() ? "canonical" : o_.scope;
      if (scope == "adversarial") {
        if (!tightness_applies(p)) throw std::invalid_argument("adversarial scope requires n >= k + 2r");
        report = storage_capacity_over({adversarial_instance(p, c_lb(p).argmin).instance});
      } else if (scope == "full" || scope == "canonical") {
        report = storage_capacity(p, EnumerationScope{o_.limit, scope == "canonical"});
      } else {
        throw std::invalid_argument("unknown scope '" + scope + "' (full, canonical, adversarial)");
      }
    }
    if (!machine()) {
      out_ << "capacity = " << to_string(report.value) << " over " << report.instances_examined
           << " instance(s), " << report.collectors_examined << " collector graph(s)"
           << (report.truncated ? " [truncated]" : "") << '\n';
    }
    emit(to_json(report));
    return kOk;
  }

  int tightness() {
    const auto p = params_from(o_, kExampleParams);
    if (!tightness_applies(p)) throw std::invalid_argument("tightness requires n >= k + 2r");
    const auto bound = c_lb(p);
    const auto cert = adversarial_instance(p, bound.argmin);
    const Capacity cut = cut_capacity(cert.graph, cert.cut);
    const Capacity flow = max_flow_min_cut(cert.graph).value;
    const bool agree = cut == Capacity(bound.value) && flow == Capacity(bound.value);
    json doc{{"c_lb", to_string(bound.value)},
             {"cut_capacity", to_string(cut)},
             {"max_flow", to_string(flow)},
             {"agree", agree},
             {"profile", to_json(bound.argmin)},
             {"instance", to_json(cert.instance)},
             {"collector", to_json(cert.collector)},
             {"cut", source_side_labels(cert.graph, cert.cut)}};
    if (!machine()) {
      out_ << "C_LB = " << to_string(bound.value) << ", adversarial cut = " << to_string(cut)
           << ", witness max-flow = " << to_string(flow) << (agree ? "  [tight]" : "  [MISMATCH]") << '\n';
    }
    emit(doc);
    if (!agree) throw AssertionFailure("tightness values differ");
    return kOk;
  }

  int truncation() {
    const auto p = params_from(o_, kExampleParams);
    const auto rep = verify_truncation(p, o_.extra);
    if (!machine()) {
      out_ << "raw C_LB at horizons";
      for (std::size_t i = 0; i < rep.horizons.size(); ++i) {
        out_ << ' ' << rep.horizons[i] << ':' << to_string(rep.values[i]);
      }
      out_ << (rep.all_equal ? "  [equal]" : "  [DIFFER]") << '\n';
    }
    emit(to_json(rep));
    if (!rep.all_equal) throw AssertionFailure("bound changes beyond k + r rounds");
    return kOk;
  }

  int tradeoff() {
    const auto p = params_from(o_, kFigure4Params);
    const auto curve = sweep_curve(p, parse_rational(o_.file_size), parse_grid(o_.grid));
    std::ostringstream dsv;
    write_curve_dsv(dsv, curve);
    if (machine()) {
      emit(curve_document(curve, dsv.str()));
    } else {
      out_ << dsv.str();
    }
    return kOk;
  }

  int simulate() {
    SimConfig cfg;
    cfg.seed = o_.seed;
    cfg.trials = o_.trials;
    cfg.field_width = o_.field;
    if (o_.b_given) {
      const Rational b = parse_rational(o_.file_size);
      if (!is_integer(b)) throw std::invalid_argument("--B must be an integer for simulation");
      cfg.file_size = static_cast<int>(b.numerator());
    }
    Instance inst;
    if (!o_.instance_path.empty()) {
      inst = load_instance(o_.instance_path);
      cfg.params = inst.params;
    } else {
      cfg.params = params_from(o_, kExampleParams.with_storage(2, 1));
      std::string scope = o_.scope;
      if (scope.empty()) scope = tightness_applies(cfg.params) ? "adversarial" : "random";
      if (scope == "adversarial") {
        inst = experiment_instance(cfg, InstanceSource::Adversarial);
      } else if (scope == "random") {
        inst = experiment_instance(cfg, InstanceSource::Random);
      } else {
        throw std::invalid_argument("unknown simulation scope '" + scope + "' (adversarial, random)");
      }
    }
    const auto report = achievability_experiment(cfg, inst);
    if (!machine()) {
      out_ << "B = " << report.file_size << ", GF(2^" << cfg.field_width << "), " << cfg.trials
           << " trials: success rate " << report.success_rate() << ", worst collector "
           << report.min_collector_rate() << ", violations " << report.violations.size() << '\n';
    }
    emit(to_json(report));
    if (!report.violations.empty()) throw AssertionFailure("coefficient rank exceeded a min cut");
    return kOk;
  }

  int figure1() {
    const auto base = params_from(o_, kExampleParams);
    const Instance inst = figure1_instance(base.alpha, base.beta);
    const DataCollectorSpec dc{2, {9, 11, 12}};
    const FlowGraph g(inst, dc);
    // Line 1: everything after initialization on the collector side.
    std::vector<std::string> line1_x;
    for (NodeId j = 1; j <= inst.params.n; ++j) {
      line1_x.push_back("in:" + std::to_string(j));
      line1_x.push_back("out:" + std::to_string(j));
    }
    const Cut line1 = cut_including(g, line1_x);
    // Line 2: out:9 and all of round 2 on the collector side.
    const Cut line2 = cut_excluding(g, {"out:9", "aux:3:2", "aux:4:2", "aux:7:2", "aux:9:2", "in:11", "out:11",
                                        "in:12", "out:12"});
    const Capacity c1 = cut_capacity(g, line1);
    const Capacity c2 = cut_capacity(g, line2);
    const auto mc = max_flow_min_cut(g);
    json doc{{"instance", to_json(inst)},
             {"collector", to_json(dc)},
             {"edges", g.edge_list()},
             {"line1", json{{"cut", source_side_labels(g, line1)}, {"capacity", to_string(c1)}}},
             {"line2", json{{"cut", source_side_labels(g, line2)}, {"capacity", to_string(c2)}}},
             {"min_cut", to_string(mc.value)}};
    if (!machine()) {
      out_ << "Example instance (n=8, k=3, d=4, r=2, T=2), collector dc:2:9,11,12\n";
      out_ << "line 1 cut capacity = " << to_string(c1) << "  (7*beta)\n";
      out_ << "line 2 cut capacity = " << to_string(c2) << "  (alpha + 3*beta)\n";
      out_ << "min cut = " << to_string(mc.value) << "\n\nedge list:\n" << g.edge_list() << '\n';
    }
    emit(doc);
    return kOk;
  }

  int figure4() {
    const auto p = params_from(o_, kFigure4Params);
    const Rational b = parse_rational(o_.file_size);
    const auto curve = sweep_curve(p, b, parse_grid(o_.grid));
    const auto dom = dominance_report(p.k, p.d, p.r, b);
    std::ostringstream dsv;
    write_dsv_header(dsv, "tradeoff " + params_title(p, b));
    for (const auto& pt : curve.points) write_dsv_row(dsv, "broadcast", pt);
    write_dsv_row(dsv, "MS-broadcast", dom.ms_broadcast);
    write_dsv_row(dsv, "MT-broadcast", dom.mt_broadcast);
    write_dsv_row(dsv, "MS-cooperative", dom.ms_cooperative);
    write_dsv_row(dsv, "MT-cooperative", dom.mt_cooperative);
    // Cooperative interior curve is not computed; straight segment for display only.
    write_dsv_row(dsv, "cooperative-schematic", dom.mt_cooperative);
    write_dsv_row(dsv, "cooperative-schematic", dom.ms_cooperative);
    if (machine()) {
      json doc = curve_document(curve, dsv.str());
      doc["dominance"] = to_json(dom);
      emit(doc);
    } else {
      out_ << dsv.str();
      out_ << "# broadcast gains over cooperative: MS " << to_string(dom.ms_gap) << ", MT " << to_string(dom.mt_gap)
           << '\n';
      for (const auto& w : dom.warnings) out_ << "# warning: " << w << '\n';
    }
    return kOk;
  }

 private:
  static json curve_document(const Curve& curve, const std::string& dsv) {
    json pts = json::array();
    for (const auto& pt : curve.points) pts.push_back(to_json(pt));
    json params = to_json(curve.params);
    params.erase("alpha");
    params.erase("beta");
    return json{{"params", params},
                {"B", to_string(curve.file_size)},
                {"beta_mt", to_string(curve.beta_mt)},
                {"beta_ms", to_string(curve.beta_ms)},
                {"points", pts},
                {"dsv", dsv}};
  }

  const Options& o_;
  std::ostream& out_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Broadcast-repair storage analyzer: capacity bounds, min cuts, tradeoff curves, RLNC simulation"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-n", o.n, "number of storage nodes");
    sub->add_option("-k", o.k, "nodes contacted by a data collector");
    sub->add_option("-d", o.d, "helpers per repair round");
    sub->add_option("-r", o.r, "failures per repair round");
    sub->add_option("-T", o.T, "number of repair rounds");
    sub->add_option("--alpha", o.alpha, "per-node storage, as p/q");
    sub->add_option("--beta", o.beta, "per-helper broadcast, as p/q");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "machine"}));
  };

  auto* bound = app.add_subcommand("bound", "closed-form capacity lower bound and its argmin");
  auto* mincut = app.add_subcommand("mincut", "exact min-cut capacity of an instance or over instances");
  auto* tight = app.add_subcommand("tightness", "certify the bound with the adversarial instance");
  auto* trunc = app.add_subcommand("truncation", "check the bound is constant past k + r rounds");
  auto* trade = app.add_subcommand("tradeoff", "sweep the storage vs repair-transmission tradeoff");
  auto* sim = app.add_subcommand("simulate", "random linear network coding achievability experiment");
  auto* fig1 = app.add_subcommand("figure1", "the two-round example graph and its two cuts");
  auto* fig4 = app.add_subcommand("figure4", "broadcast curve plus broadcast/cooperative MS and MT points");
  for (auto* sub : {bound, mincut, tight, trunc, trade, sim, fig1, fig4}) add_common(sub);

  mincut->add_option("--instance", o.instance_path, "instance document");
  mincut->add_option("--scope", o.scope, "full, canonical (default) or adversarial");
  mincut->add_option("--limit", o.limit, "stop after this many instances (0 = all)");
  trunc->add_option("--extra", o.extra, "horizons beyond k + r to check");
  for (auto* sub : {trade, fig4}) {
    sub->add_option("--B", o.file_size, "file size");
    sub->add_option("--grid", o.grid, "comma-separated beta values, or auto");
  }
  sim->add_option("--instance", o.instance_path, "instance document");
  sim->add_option("--scope", o.scope, "adversarial or random schedule");
  sim->add_option("--B", o.file_size, "file size in packets (default: the bound)");
  sim->add_option("--seed", o.seed, "random seed");
  sim->add_option("--trials", o.trials, "number of trials");
  sim->add_option("--field", o.field, "field width w of GF(2^w)")->check(CLI::IsMember({4, 8, 16}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  o.b_given = sim->count("--B") > 0;

  Runner runner(o, out);
  try {
    if (*bound) return runner.bound();
    if (*mincut) return runner.mincut();
    if (*tight) return runner.tightness();
    if (*trunc) return runner.truncation();
    if (*trade) return runner.tradeoff();
    if (*sim) return runner.simulate();
    if (*fig1) return runner.figure1();
    if (*fig4) return runner.figure4();
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kAssertion;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::domain_error& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kAssertion;
  }
  return kUsage;
}

}  // namespace bcrepair::cli
