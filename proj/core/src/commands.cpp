#include "netcomp/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "netcomp/comp_time.hpp"
#include "netcomp/simulator.hpp"
#include "netcomp/version.hpp"

namespace netcomp {

using nlohmann::json;

std::string fmt_prob(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string fmt_bits(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

namespace {

CutsetStrategy strategy_from_query(const ProblemSpec& spec, const SuccessivePartition* part) {
  CutsetStrategy s;
  const std::string& mode = spec.query.strategy;
  if (mode == "all-subsets")
    s.mode = CutsetStrategy::Mode::AllSubsets;
  else if (mode == "singleton-complements")
    s.mode = CutsetStrategy::Mode::SingletonComplements;
  else if (mode == "partition-prefixes")
    s.mode = CutsetStrategy::Mode::PartitionPrefixes;
  else
    s.mode = CutsetStrategy::Mode::Auto;
  s.partition = part;
  return s;
}

json entry_to_json(const BoundEntry& e) {
  json j;
  j["name"] = e.name;
  j["t_lower"] = e.infinite ? json("inf") : json(e.t_lower);
  if (auto c = e.t_ceil()) j["t_ceil"] = *c;
  j["applicable"] = e.applicable;
  j["vacuous"] = e.vacuous;
  j["informational"] = e.informational;
  j["binding"] = e.binding;
  j["flags"] = e.flags;
  j["inputs"] = e.inputs;
  return j;
}

void print_entry_row(std::ostream& out, const std::string& name, const std::string& value,
                     const std::string& ceil, const std::string& binding,
                     const std::string& notes) {
  out << "  " << std::left << std::setw(26) << name << std::setw(14) << value << std::setw(8)
      << ceil << std::setw(28) << binding << notes << "\n";
}

void print_report(std::ostream& out, const BoundReport& report) {
  print_entry_row(out, "method", "T_lower", "T>=", "binding", "notes");
  for (const auto& e : report.entries) {
    std::string value, ceil;
    if (!e.applicable) {
      value = "n/a";
      ceil = "-";
    } else if (e.infinite) {
      value = "inf";
      ceil = "inf";
    } else {
      value = fmt_bits(e.t_lower);
      auto c = e.t_ceil();
      ceil = c ? std::to_string(*c) : "-";
    }
    std::string notes;
    if (e.informational) notes += "[informational] ";
    for (const auto& fl : e.flags) notes += fl + "; ";
    print_entry_row(out, e.name, value, ceil, e.binding, notes);
  }
  std::string cv = report.combined_infinite ? "inf" : fmt_bits(report.combined);
  std::string cc = report.combined_infinite
                       ? "inf"
                       : std::to_string(int64_t(std::ceil(report.combined - 1e-12)));
  print_entry_row(out, "combined", cv, cc, report.combined_method, "");
}

json machine_header(const ProblemSpec& spec) {
  json j;
  j["version"] = version_string;
  j["seed"] = spec.query.seed;
  j["input"] = json::parse(serialize_spec(spec));
  return j;
}

void emit_machine(std::ostream& out, const json& j) {
  out << "-- machine-readable --\n" << j.dump() << "\n";
}

}  // namespace

int cmd_bounds(const ProblemSpec& spec, std::ostream& out,
               const std::optional<std::string>& csv_path) {
  out << "netcomp " << version_string << " -- computation-time lower bounds\n";
  out << "criterion: " << spec.query.criterion << ", eps=" << fmt_prob(spec.query.eps)
      << ", delta=" << fmt_prob(spec.query.delta) << ", |V|=" << spec.net.size() << "\n\n";

  CsbpOptions csbp;
  csbp.seed = spec.query.seed;
  csbp.samples = uint64_t(spec.query.samples);

  int exit_code = 0;
  BoundReport report;
  std::optional<SuccessivePartition> part;
  try {
    if (spec.query.partition_blocks) {
      auto nested = query_partition_nested(spec);
      part = validate_partition(spec.net, *nested);
    } else if (spec.query.partition_root) {
      part = bfs_partition(spec.net, spec.net.index_of(*spec.query.partition_root));
    } else if (spec.net.bidirectional() && diameter(spec.net).value_or(1) >= 2 &&
               spec.net.size() >= 3) {
      part = bfs_partition(spec.net, 0);
    }
  } catch (const std::exception& e) {
    out << "partition error: " << e.what() << "\n";
    exit_code = 1;
  }

  auto strategy = strategy_from_query(spec, part ? &*part : nullptr);
  try {
    if (spec.query.criterion == "excess") {
      report = t_lower_combined(spec.net, spec.models, spec.f, spec.dist, spec.query.eps,
                                spec.query.delta, strategy, part ? &*part : nullptr, csbp);
    } else {
      // max / avg: the rate-distortion bound applies directly; excess
      // bounds convert through T_max(eps) >= sup_delta T(eps/delta, delta).
      double eps = spec.query.criterion == "avg" ? double(spec.net.size()) * spec.query.eps
                                                 : spec.query.eps;
      BoundEntry rd = t_lower_rd(spec.net, spec.models, spec.f, spec.dist, eps, strategy, csbp);
      if (spec.query.criterion == "avg") rd.flags.push_back("T_avg(eps) >= T_max(|V| eps)");
      report.add(rd);
      auto excess = [&](double e, double d) {
        auto rep = t_lower_combined(spec.net, spec.models, spec.f, spec.dist, e, d, strategy,
                                    part ? &*part : nullptr, csbp);
        return rep.combined_infinite ? std::numeric_limits<double>::infinity() : rep.combined;
      };
      BoundEntry conv;
      conv.name = "excess-converted";
      conv.flags.push_back("sup over delta grid of T(eps/delta, delta)");
      double v = t_max_lower_from_excess(excess, eps);
      conv.infinite = std::isinf(v);
      conv.t_lower = v;
      report.add(conv);
      report.finalize();
    }
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }

  print_report(out, report);
  out << "\n";

  json machine = machine_header(spec);
  machine["entries"] = json::array();
  for (const auto& e : report.entries) machine["entries"].push_back(entry_to_json(e));
  machine["combined"] = report.combined_infinite ? json("inf") : json(report.combined);
  machine["combined_method"] = report.combined_method;
  emit_machine(out, machine);

  if (csv_path) {
    std::ofstream csv(*csv_path);
    if (!csv) {
      out << "error: cannot write " << *csv_path << "\n";
      return 1;
    }
    csv << "method,t_lower,t_ceil,applicable,binding\n";
    for (const auto& e : report.entries) {
      auto c = e.t_ceil();
      csv << e.name << "," << (e.infinite ? "inf" : fmt_bits(e.t_lower)) << ","
          << (c ? std::to_string(*c) : "") << "," << (e.applicable ? 1 : 0) << ",\""
          << e.binding << "\"\n";
    }
  }
  return exit_code;
}

int cmd_partition(const ProblemSpec& spec, const std::optional<NodeId>& root, std::ostream& out) {
  out << "netcomp " << version_string << " -- successive partition\n";
  SuccessivePartition part;
  try {
    if (spec.query.partition_blocks) {
      auto nested = query_partition_nested(spec);
      part = validate_partition(spec.net, *nested);
      out << "source: user partition (validated)\n";
    } else {
      NodeId r = root.value_or(spec.query.partition_root.value_or(spec.net.nodes.front()));
      part = bfs_partition(spec.net, spec.net.index_of(r));
      out << "source: balls around root " << r << "\n";
    }
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }

  out << "blocks: " << part.blocks() << ", delta(max d_i): " << part.delta << "\n";
  for (int i = 0; i < part.blocks(); ++i) {
    NodeSet s(part.subsets[size_t(i)].begin(), part.subsets[size_t(i)].end());
    NodeSet lb(part.left_bound[size_t(i)].begin(), part.left_bound[size_t(i)].end());
    out << "  S_" << (i + 1) << " = " << set_label(spec.net, s);
    if (i >= 1) out << "  d_" << (i + 1) << " = " << part.d[size_t(i - 1)];
    out << "  left-bound " << set_label(spec.net, lb) << "\n";
  }

  json machine = machine_header(spec);
  json blocks = json::array();
  for (const auto& s : part.subsets) {
    json b = json::array();
    for (int v : s) b.push_back(spec.net.id(v));
    blocks.push_back(b);
  }
  machine["blocks"] = blocks;
  machine["d"] = part.d;
  machine["delta"] = part.delta;
  emit_machine(out, machine);
  return 0;
}

int cmd_simulate(const ProblemSpec& spec, const std::string& algorithm, std::optional<int> rounds,
                 std::ostream& out, const std::optional<std::string>& csv_path) {
  out << "netcomp " << version_string << " -- simulation\n";
  Algorithm alg;
  if (algorithm == "parity_repetition")
    alg = parity_repetition();
  else if (algorithm == "chain_relay")
    alg = chain_relay();
  else {
    out << "error: unknown algorithm \"" << algorithm << "\" (parity_repetition | chain_relay)\n";
    return 1;
  }

  SimOptions opts;
  opts.samples = spec.query.samples;
  opts.seed = spec.query.seed;

  json machine = machine_header(spec);
  machine["algorithm"] = algorithm;
  int exit_code = 0;
  try {
    int t_used;
    if (!rounds) {
      int t_cap = 4 * spec.net.size() + 60;
      auto emp = empirical_computation_time(spec.net, spec.models, spec.f, spec.dist, alg,
                                            spec.query.eps, spec.query.delta, t_cap, opts);
      if (!emp.rounds) {
        out << "no T <= " << t_cap << " certified at delta=" << fmt_prob(spec.query.delta) << "\n";
        machine["empirical_T"] = nullptr;
        emit_machine(out, machine);
        return 0;
      }
      t_used = *emp.rounds;
      out << "empirical computation time (upper bound on T(eps,delta)): T = " << t_used
          << (emp.analytic ? "  [analytic binomial certification]" : "  [monte carlo certification]")
          << "\n";
      machine["empirical_T"] = t_used;
      machine["analytic"] = emp.analytic;
      // Lower bound side by side.
      CsbpOptions csbp;
      csbp.seed = spec.query.seed;
      csbp.samples = uint64_t(spec.query.samples);
      auto strategy = strategy_from_query(spec, nullptr);
      auto report = t_lower_combined(spec.net, spec.models, spec.f, spec.dist, spec.query.eps,
                                     spec.query.delta, strategy, nullptr, csbp);
      std::string lb = report.combined_infinite
                           ? "inf"
                           : std::to_string(int64_t(std::ceil(report.combined - 1e-12)));
      out << "combined lower bound: T >= " << lb << " (" << report.combined_method << ")\n";
      machine["lower_bound"] =
          report.combined_infinite ? json("inf") : json(report.combined);
    } else {
      t_used = *rounds;
    }

    auto trial =
        run_algorithm(spec.net, spec.models, spec.f, spec.dist, alg, t_used, spec.query.eps, opts);
    out << "T=" << t_used << ", samples=" << trial.samples << ", seed=" << trial.seed << "\n";
    out << "  node    failures  p_hat       ci99_lo     ci99_hi\n";
    json nodes = json::array();
    for (int v = 0; v < spec.net.size(); ++v) {
      out << "  " << std::left << std::setw(8) << spec.net.id(v) << std::setw(10)
          << trial.failures[size_t(v)] << std::setw(12) << fmt_prob(trial.p_hat[size_t(v)])
          << std::setw(12) << fmt_prob(trial.ci99[size_t(v)].first) << std::setw(12)
          << fmt_prob(trial.ci99[size_t(v)].second) << "\n";
      json nj;
      nj["node"] = spec.net.id(v);
      nj["failures"] = trial.failures[size_t(v)];
      nj["p_hat"] = trial.p_hat[size_t(v)];
      nj["ci99"] = {trial.ci99[size_t(v)].first, trial.ci99[size_t(v)].second};
      nodes.push_back(nj);
    }
    machine["T"] = t_used;
    machine["nodes"] = nodes;
    emit_machine(out, machine);

    if (csv_path) {
      std::ofstream csv(*csv_path);
      if (!csv) {
        out << "error: cannot write " << *csv_path << "\n";
        return 1;
      }
      csv << "T,node,failures,samples,p_hat,ci_lo,ci_hi\n";
      for (int v = 0; v < spec.net.size(); ++v)
        csv << t_used << "," << spec.net.id(v) << "," << trial.failures[size_t(v)] << ","
            << trial.samples << "," << fmt_prob(trial.p_hat[size_t(v)]) << ","
            << fmt_prob(trial.ci99[size_t(v)].first) << ","
            << fmt_prob(trial.ci99[size_t(v)].second) << "\n";
    }
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

int cmd_figures(const FigureParams& params, const std::optional<std::string>& csv_path,
                std::ostream& out) {
  std::ostringstream csv;
  try {
    if (params.which == "cutset-vs-sdpi") {
      if (params.p <= 0.0 || params.p >= 0.5)
        throw std::invalid_argument("cutset-vs-sdpi needs p in (0, 0.5)");
      csv << "T,cutset_bound,sdpi_bound\n";
      double cap = 1.0 - binary_entropy(params.p);
      double eta = (1.0 - 2.0 * params.p) * (1.0 - 2.0 * params.p);
      for (int t = params.t_min; t <= params.t_max; ++t) {
        double cutset = mi_upper_cutset(cap, double(t));
        double sdpi = mi_upper_sdpi(1.0, eta, double(t));  // 1-(4 p pbar)^T
        csv << t << "," << fmt_bits(cutset) << "," << fmt_bits(sdpi) << "\n";
      }
    } else if (params.which == "chain-exact-vs-weak") {
      if (params.n < 2) throw std::invalid_argument("chain-exact-vs-weak needs n >= 2");
      if (params.eta < 0.0 || params.eta > 1.0)
        throw std::invalid_argument("chain-exact-vs-weak needs eta in [0,1]");
      csv << "T,exact,weakened\n";
      for (int t = params.t_min; t <= params.t_max; ++t) {
        auto exact = chain_mi_closed(params.n, t, params.eta, 1.0, std::nullopt);
        auto weak = chain_mi_weakened(params.n, t, params.eta, 1.0, std::nullopt);
        csv << t << "," << fmt_bits(exact.h_form) << "," << fmt_bits(weak.h_form) << "\n";
      }
    } else {
      throw std::invalid_argument("unknown figure \"" + params.which +
                                  "\" (cutset-vs-sdpi | chain-exact-vs-weak)");
    }
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
  if (csv_path) {
    std::ofstream f(*csv_path);
    if (!f) {
      out << "error: cannot write " << *csv_path << "\n";
      return 1;
    }
    f << csv.str();
    out << "wrote " << *csv_path << "\n";
  } else {
    out << csv.str();
  }
  return 0;
}

int cmd_sdpi(const ProblemSpec& spec, double resolution, std::ostream& out) {
  out << "netcomp " << version_string << " -- channel diagnostics\n";
  out << "  edge          capacity    eta         exact  eta_lower_estimate\n";
  json machine = machine_header(spec);
  json rows = json::array();
  int exit_code = 0;
  for (const auto& e : spec.net.edges) {
    try {
      double cap = capacity(e.ch);
      auto sd = sdpi_constant(e.ch);
      double lower = sdpi_lower_estimate(e.ch, resolution);
      std::string label = spec.net.id(e.from) + "->" + spec.net.id(e.to);
      out << "  " << std::left << std::setw(14) << label << std::setw(12) << fmt_bits(cap)
          << std::setw(12) << fmt_prob(sd.value) << std::setw(7) << (sd.exact ? "yes" : "no")
          << fmt_prob(lower) << "\n";
      json r;
      r["edge"] = label;
      r["capacity"] = cap;
      r["eta"] = sd.value;
      r["eta_exact"] = sd.exact;
      r["eta_lower_estimate"] = lower;
      rows.push_back(r);
    } catch (const std::exception& ex) {
      out << "error: " << ex.what() << "\n";
      exit_code = 1;
    }
  }
  machine["channels"] = rows;
  emit_machine(out, machine);
  return exit_code;
}

}  // namespace netcomp
