#include "netcomp/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace netcomp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("problem spec: " + where + ": " + what);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where, "unknown key \"" + it.key() + "\"");
}

double number_at(const json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) fail(where, "missing \"" + key + "\"");
  if (!j[key].is_number()) fail(where, "\"" + key + "\" must be a number");
  return j[key].get<double>();
}

Channel parse_channel(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "p", "rows"});
  std::string kind = j.value("kind", "");
  if (kind == "bsc") return bsc(number_at(j, where, "p"));
  if (kind == "bec") return bec(number_at(j, where, "p"));
  if (kind == "matrix") {
    if (!j.contains("rows")) fail(where, "matrix channel needs \"rows\"");
    return channel_from_matrix(j["rows"].get<std::vector<std::vector<double>>>());
  }
  fail(where, "channel kind must be bsc, bec or matrix");
}

json channel_to_json(const Channel& ch) {
  json j;
  switch (ch.kind) {
    case ChannelKind::Bsc:
      j["kind"] = "bsc";
      j["p"] = ch.param;
      break;
    case ChannelKind::Bec:
      j["kind"] = "bec";
      j["p"] = ch.param;
      break;
    case ChannelKind::Matrix: {
      j["kind"] = "matrix";
      std::vector<std::vector<double>> rows(size_t(ch.input_size));
      for (int x = 0; x < ch.input_size; ++x)
        for (int y = 0; y < ch.output_size; ++y) rows[size_t(x)].push_back(ch.k(x, y));
      j["rows"] = rows;
      break;
    }
  }
  return j;
}

ObservationModel parse_observation(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "p", "mean", "variance", "lo", "hi", "support", "pmf"});
  std::string kind = j.value("kind", "");
  if (kind == "rademacher") return rademacher();
  if (kind == "bernoulli") return bernoulli(number_at(j, where, "p"));
  if (kind == "gaussian")
    return gaussian(j.value("mean", 0.0), number_at(j, where, "variance"));
  if (kind == "uniform") return uniform_interval(number_at(j, where, "lo"), number_at(j, where, "hi"));
  if (kind == "finite") {
    if (!j.contains("support") || !j.contains("pmf")) fail(where, "finite model needs support+pmf");
    return finite_dist(j["support"].get<std::vector<double>>(),
                       j["pmf"].get<std::vector<double>>());
  }
  fail(where, "observation kind must be rademacher, bernoulli, gaussian, uniform or finite");
}

json observation_to_json(const ObservationModel& m) {
  json j;
  switch (m.kind) {
    case ObservationModel::Kind::Rademacher:
      j["kind"] = "rademacher";
      break;
    case ObservationModel::Kind::Bernoulli:
      j["kind"] = "bernoulli";
      j["p"] = m.p;
      break;
    case ObservationModel::Kind::Gaussian:
      j["kind"] = "gaussian";
      j["mean"] = m.mean;
      j["variance"] = m.variance;
      break;
    case ObservationModel::Kind::Uniform:
      j["kind"] = "uniform";
      j["lo"] = m.lo;
      j["hi"] = m.hi;
      break;
    case ObservationModel::Kind::Finite:
      j["kind"] = "finite";
      j["support"] = m.support;
      j["pmf"] = m.pmf;
      break;
  }
  return j;
}

Network parse_network(const json& j) {
  check_keys(j, "network", {"topology", "nodes", "edges", "between", "channel"});
  std::optional<Channel> default_ch;
  if (j.contains("channel")) default_ch = parse_channel(j["channel"], "network.channel");

  if (j.contains("topology")) {
    if (j.contains("nodes") || j.contains("edges") || j.contains("between"))
      fail("network", "give either a topology preset or explicit nodes/edges");
    const json& t = j["topology"];
    check_keys(t, "network.topology", {"kind", "nodes", "side", "degree", "depth"});
    if (!default_ch) fail("network", "topology preset needs a default \"channel\"");
    TopologySpec spec;
    spec.kind = t.value("kind", "");
    spec.ch = *default_ch;
    if (spec.kind == "grid")
      spec.size = int(number_at(t, "network.topology", "side"));
    else if (spec.kind == "tree") {
      spec.size = int(number_at(t, "network.topology", "degree"));
      spec.extra = int(number_at(t, "network.topology", "depth"));
    } else if (spec.kind != "two_node")
      spec.size = int(number_at(t, "network.topology", "nodes"));
    return make_topology(spec);
  }

  if (!j.contains("nodes")) fail("network", "needs \"nodes\" or a \"topology\" preset");
  auto nodes = j["nodes"].get<std::vector<NodeId>>();
  std::vector<std::tuple<NodeId, NodeId, Channel>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      check_keys(e, "network.edges[]", {"from", "to", "channel"});
      if (!e.contains("from") || !e.contains("to")) fail("network.edges[]", "needs from/to");
      Channel ch = e.contains("channel") ? parse_channel(e["channel"], "network.edges[].channel")
                                         : (default_ch ? *default_ch
                                                       : throw std::invalid_argument(
                                                             "problem spec: network.edges[]: no "
                                                             "channel and no default channel"));
      edges.emplace_back(e["from"].get<NodeId>(), e["to"].get<NodeId>(), ch);
    }
  }
  if (j.contains("between")) {
    if (!default_ch) fail("network.between", "needs a default \"channel\"");
    for (const auto& pair : j["between"]) {
      auto ids = pair.get<std::vector<NodeId>>();
      if (ids.size() != 2) fail("network.between", "entries must be node-id pairs");
      edges.emplace_back(ids[0], ids[1], *default_ch);
      edges.emplace_back(ids[1], ids[0], *default_ch);
    }
  }
  return make_network(nodes, edges);
}

}  // namespace

ProblemSpec parse_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("problem spec: invalid JSON: ") + e.what());
  }
  check_keys(j, "spec", {"network", "observations", "function", "distortion", "query"});
  if (!j.contains("network")) fail("spec", "missing \"network\"");
  if (!j.contains("function")) fail("spec", "missing \"function\"");

  ProblemSpec spec;
  spec.net = parse_network(j["network"]);
  const int n = spec.net.size();

  ObservationModel default_model = rademacher();
  json per_node = json::object();
  if (j.contains("observations")) {
    check_keys(j["observations"], "observations", {"default", "per_node"});
    if (j["observations"].contains("default"))
      default_model = parse_observation(j["observations"]["default"], "observations.default");
    if (j["observations"].contains("per_node")) per_node = j["observations"]["per_node"];
  }
  spec.models.assign(size_t(n), default_model);
  for (auto it = per_node.begin(); it != per_node.end(); ++it) {
    int v = spec.net.index_of(it.key());  // throws on dangling id
    spec.models[size_t(v)] = parse_observation(it.value(), "observations.per_node");
  }

  {
    const json& f = j["function"];
    check_keys(f, "function", {"kind", "coefficients", "matrix"});
    std::string kind = f.value("kind", "");
    if (kind == "parity")
      spec.f = parity_function();
    else if (kind == "identity")
      spec.f = identity_function();
    else if (kind == "linear") {
      if (!f.contains("coefficients")) fail("function", "linear needs \"coefficients\"");
      spec.f = linear_function(f["coefficients"].get<std::vector<double>>());
    } else if (kind == "linear_vector") {
      if (!f.contains("matrix")) fail("function", "linear_vector needs \"matrix\"");
      spec.f = linear_vector_function(f["matrix"].get<std::vector<std::vector<double>>>());
    } else {
      fail("function", "kind must be parity, identity, linear or linear_vector");
    }
  }

  spec.dist.kind = Distortion::Kind::Hamming;
  if (j.contains("distortion")) {
    const json& d = j["distortion"];
    check_keys(d, "distortion", {"kind", "d_max"});
    std::string kind = d.value("kind", "hamming");
    if (kind == "hamming")
      spec.dist.kind = Distortion::Kind::Hamming;
    else if (kind == "absolute")
      spec.dist.kind = Distortion::Kind::Absolute;
    else if (kind == "quadratic")
      spec.dist.kind = Distortion::Kind::Quadratic;
    else if (kind == "euclidean")
      spec.dist.kind = Distortion::Kind::Euclidean;
    else
      fail("distortion", "kind must be hamming, absolute, quadratic or euclidean");
    if (d.contains("d_max")) spec.dist.d_max = d["d_max"].get<double>();
  }

  if (j.contains("query")) {
    const json& q = j["query"];
    check_keys(q, "query",
               {"eps", "delta", "criterion", "strategy", "samples", "seed", "partition_root",
                "partition"});
    spec.query.eps = q.value("eps", 0.0);
    spec.query.delta = q.value("delta", 0.1);
    spec.query.criterion = q.value("criterion", "excess");
    spec.query.strategy = q.value("strategy", "auto");
    spec.query.samples = q.value("samples", int64_t(100000));
    spec.query.seed = q.value("seed", uint64_t(12345));
    if (q.contains("partition_root"))
      spec.query.partition_root = q["partition_root"].get<NodeId>();
    if (q.contains("partition"))
      spec.query.partition_blocks = q["partition"].get<std::vector<std::vector<NodeId>>>();
  }
  static const std::set<std::string> criteria{"excess", "max", "avg"};
  if (!criteria.count(spec.query.criterion)) fail("query", "criterion must be excess, max or avg");
  static const std::set<std::string> strategies{"auto", "all-subsets", "singleton-complements",
                                                "partition-prefixes"};
  if (!strategies.count(spec.query.strategy)) fail("query", "unknown strategy");
  if (spec.query.eps < 0.0) fail("query", "eps must be nonnegative");
  if (spec.query.delta < 0.0 || spec.query.delta >= 1.0) fail("query", "delta must lie in [0,1)");

  if (spec.query.partition_blocks) {
    for (const auto& block : *spec.query.partition_blocks)
      for (const auto& id : block) spec.net.index_of(id);  // resolve references
  }

  check_problem_shape(spec.models, spec.f, spec.dist);
  return spec;
}

ProblemSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("problem spec: cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

std::string serialize_spec(const ProblemSpec& spec) {
  json j;
  json net;
  net["nodes"] = spec.net.nodes;
  json edges = json::array();
  for (const auto& e : spec.net.edges) {
    json je;
    je["from"] = spec.net.id(e.from);
    je["to"] = spec.net.id(e.to);
    je["channel"] = channel_to_json(e.ch);
    edges.push_back(je);
  }
  net["edges"] = edges;
  j["network"] = net;

  json obs;
  obs["default"] = observation_to_json(spec.models.front());
  json per_node = json::object();
  for (int v = 1; v < spec.net.size(); ++v) {
    if (observation_to_json(spec.models[size_t(v)]) != obs["default"])
      per_node[spec.net.id(v)] = observation_to_json(spec.models[size_t(v)]);
  }
  if (!per_node.empty()) obs["per_node"] = per_node;
  j["observations"] = obs;

  json f;
  switch (spec.f.kind) {
    case FunctionSpec::Kind::Parity:
      f["kind"] = "parity";
      break;
    case FunctionSpec::Kind::Identity:
      f["kind"] = "identity";
      break;
    case FunctionSpec::Kind::Linear:
      f["kind"] = "linear";
      f["coefficients"] = spec.f.coefficients;
      break;
    case FunctionSpec::Kind::LinearVector:
      f["kind"] = "linear_vector";
      f["matrix"] = spec.f.matrix;
      break;
  }
  j["function"] = f;

  json d;
  switch (spec.dist.kind) {
    case Distortion::Kind::Hamming:
      d["kind"] = "hamming";
      break;
    case Distortion::Kind::Absolute:
      d["kind"] = "absolute";
      break;
    case Distortion::Kind::Quadratic:
      d["kind"] = "quadratic";
      break;
    case Distortion::Kind::Euclidean:
      d["kind"] = "euclidean";
      break;
  }
  if (spec.dist.d_max) d["d_max"] = *spec.dist.d_max;
  j["distortion"] = d;

  json q;
  q["eps"] = spec.query.eps;
  q["delta"] = spec.query.delta;
  q["criterion"] = spec.query.criterion;
  q["strategy"] = spec.query.strategy;
  q["samples"] = spec.query.samples;
  q["seed"] = spec.query.seed;
  if (spec.query.partition_root) q["partition_root"] = *spec.query.partition_root;
  if (spec.query.partition_blocks) q["partition"] = *spec.query.partition_blocks;
  j["query"] = q;

  return j.dump(2) + "\n";
}

std::optional<std::vector<NodeSet>> query_partition_nested(const ProblemSpec& spec) {
  if (!spec.query.partition_blocks) return std::nullopt;
  std::vector<NodeSet> nested;
  NodeSet acc;
  const auto& blocks = *spec.query.partition_blocks;
  for (size_t i = 0; i + 1 < blocks.size(); ++i) {
    for (const auto& id : blocks[i]) acc.insert(spec.net.index_of(id));
    nested.push_back(acc);
  }
  return nested;
}

}  // namespace netcomp
