#include "netcomp/comp_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "netcomp/stats.hpp"

namespace netcomp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPiE = 17.079468445347132;
}  // namespace

std::optional<int64_t> BoundEntry::t_ceil() const {
  if (!applicable || infinite) return std::nullopt;
  double c = std::ceil(t_lower - 1e-12);
  return int64_t(std::max(0.0, c));
}

void BoundReport::add(BoundEntry entry) { entries.push_back(std::move(entry)); }

void BoundReport::finalize() {
  combined = 0.0;
  combined_infinite = false;
  combined_method.clear();
  for (const auto& e : entries) {
    if (!e.applicable || e.informational) continue;
    if (e.infinite) {
      combined_infinite = true;
      combined_method = e.name;
      combined = kInf;
      return;
    }
    if (e.t_lower > combined) {
      combined = e.t_lower;
      combined_method = e.name;
    }
  }
}

std::string set_label(const Network& net, const NodeSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s) {
    if (!first) out += ",";
    out += net.id(v);
    first = false;
  }
  return out + "}";
}

std::vector<NodeSet> candidate_sets(const Network& net, const CutsetStrategy& strategy) {
  const int n = net.size();
  std::set<NodeSet> out;
  auto add_singleton_complements = [&] {
    for (int v = 0; v < n; ++v) {
      NodeSet s = net.all_nodes();
      s.erase(v);
      if (!s.empty()) out.insert(s);
    }
  };
  auto add_prefixes = [&] {
    if (!strategy.partition) return;
    for (const auto& p : strategy.partition->nested) {
      NodeSet s(p.begin(), p.end());
      out.insert(s);
      out.insert(net.complement(s));
    }
  };
  auto add_all = [&] {
    if (n > 16) throw std::invalid_argument("candidate_sets: all-subsets needs |V| <= 16");
    for (uint32_t mask = 1; mask + 1 < (uint32_t(1) << n); ++mask) {
      NodeSet s;
      for (int v = 0; v < n; ++v)
        if (mask & (uint32_t(1) << v)) s.insert(v);
      out.insert(s);
    }
  };
  switch (strategy.mode) {
    case CutsetStrategy::Mode::AllSubsets:
      add_all();
      break;
    case CutsetStrategy::Mode::SingletonComplements:
      add_singleton_complements();
      break;
    case CutsetStrategy::Mode::PartitionPrefixes:
      if (!strategy.partition)
        throw std::invalid_argument("candidate_sets: partition-prefixes needs a partition");
      add_prefixes();
      break;
    case CutsetStrategy::Mode::UserList:
      break;
    case CutsetStrategy::Mode::Auto:
      if (n <= 16) {
        add_all();
      } else {
        add_singleton_complements();
        add_prefixes();
      }
      break;
  }
  for (const auto& s : strategy.user_sets) {
    if (s.empty() || int(s.size()) == n)
      throw std::invalid_argument("candidate_sets: user set must be a nonempty proper subset");
    for (int v : s)
      if (v < 0 || v >= n) throw std::invalid_argument("candidate_sets: user set node out of range");
    out.insert(s);
  }
  if (out.empty()) throw std::invalid_argument("candidate_sets: strategy produced no candidates");
  return {out.begin(), out.end()};
}

namespace {

struct CandidateEll {
  bool condition_ok = false;
  double expected_l = 1.0;
  MiLower ell;
  CsbpEstimate est;
};

CandidateEll candidate_ell(const std::vector<ObservationModel>& models, const FunctionSpec& f,
                           const Distortion& dist, const NodeSet& s, double eps, double delta,
                           const CsbpOptions& opts) {
  CandidateEll out;
  out.est = expected_csbp(models, f, dist, s, eps, opts);
  out.expected_l = out.est.value;
  out.condition_ok = out.est.value <= 1.0 - delta;
  if (out.condition_ok) out.ell = mi_lower_smallball(out.est.value, delta);
  return out;
}

void echo_csbp(BoundEntry& e, const CsbpEstimate& est) {
  e.flags.push_back("csbp-method: " + est.method + (est.note.empty() ? "" : " (" + est.note + ")"));
  if (est.ci) {
    e.inputs["csbp_ci_lo"] = est.ci->first;
    e.inputs["csbp_ci_hi"] = est.ci->second;
    e.inputs["csbp_samples"] = double(est.samples);
  }
}

void echo_common(BoundEntry& e, double eps, double delta) {
  e.inputs["eps"] = eps;
  e.inputs["delta"] = delta;
}

}  // namespace

BoundEntry t_lower_cutset(const Network& net, const std::vector<ObservationModel>& models,
                          const FunctionSpec& f, const Distortion& dist, double eps, double delta,
                          const CutsetStrategy& strategy, const CsbpOptions& opts) {
  BoundEntry entry;
  entry.name = "cutset-capacity";
  echo_common(entry, eps, delta);
  auto candidates = candidate_sets(net, strategy);
  int skipped = 0;
  bool any = false;
  std::optional<CsbpEstimate> binding_est;
  for (const auto& s : candidates) {
    auto cand = candidate_ell(models, f, dist, s, eps, delta, opts);
    if (!cand.condition_ok) {
      ++skipped;
      continue;
    }
    any = true;
    double cs = cutset_capacity(net, s);
    double value;
    bool inf = false;
    if (cand.ell.infinite) {
      inf = true;
      value = kInf;
    } else if (cand.ell.value <= 0.0) {
      value = 0.0;
    } else if (cs == 0.0) {
      inf = true;
      value = kInf;
    } else {
      value = cand.ell.value / cs;
    }
    if (inf && !entry.infinite) {
      entry.infinite = true;
      entry.t_lower = kInf;
      entry.binding = set_label(net, s);
      entry.inputs["expected_l"] = cand.expected_l;
      entry.inputs["c_s"] = cs;
    } else if (!entry.infinite && value > entry.t_lower) {
      entry.t_lower = value;
      entry.binding = set_label(net, s);
      entry.inputs["ell"] = cand.ell.value;
      entry.inputs["expected_l"] = cand.expected_l;
      entry.inputs["c_s"] = cs;
      binding_est = cand.est;
    }
  }
  if (skipped > 0)
    entry.flags.push_back("condition(E[L]<=1-delta) failed on " + std::to_string(skipped) +
                          " candidate set(s)");
  if (!any) {
    entry.applicable = false;
    entry.flags.push_back("inapplicable: small-ball condition failed on every candidate");
    return entry;
  }
  entry.flags.push_back("condition check: per-candidate expected CSBP");
  if (binding_est) echo_csbp(entry, *binding_est);
  entry.vacuous = !entry.infinite && entry.t_lower <= 0.0;
  return entry;
}

namespace {

// Distortion matrix over the atoms of a discrete target.
std::vector<std::vector<double>> distortion_matrix(const detail::DiscreteDist& z,
                                                   Distortion::Kind kind) {
  const size_t n = z.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double diff = z[i].value - z[j].value;
      switch (kind) {
        case Distortion::Kind::Hamming:
          d[i][j] = i == j ? 0.0 : 1.0;
          break;
        case Distortion::Kind::Absolute:
          d[i][j] = std::fabs(diff);
          break;
        case Distortion::Kind::Quadratic:
          d[i][j] = diff * diff;
          break;
        case Distortion::Kind::Euclidean:
          d[i][j] = std::fabs(diff);
          break;
      }
    }
  return d;
}

bool all_gaussian(const std::vector<ObservationModel>& models) {
  for (const auto& m : models)
    if (m.kind != ObservationModel::Kind::Gaussian) return false;
  return true;
}

bool all_discrete(const std::vector<ObservationModel>& models) {
  for (const auto& m : models)
    if (!m.discrete()) return false;
  return true;
}

double gaussian_cond_variance(const std::vector<ObservationModel>& models, const FunctionSpec& f,
                              const NodeSet& s) {
  double var = 0.0;
  for (int v = 0; v < int(models.size()); ++v) {
    if (s.count(v)) continue;
    var += f.coefficients[size_t(v)] * f.coefficients[size_t(v)] * models[size_t(v)].var();
  }
  return var;
}

}  // namespace

BoundEntry t_lower_rd(const Network& net, const std::vector<ObservationModel>& models,
                      const FunctionSpec& f, const Distortion& dist, double eps,
                      const CutsetStrategy& strategy, const CsbpOptions& opts) {
  (void)opts;
  BoundEntry entry;
  entry.name = "rate-distortion";
  entry.inputs["eps"] = eps;

  const bool gaussian_linear = f.kind == FunctionSpec::Kind::Linear && all_gaussian(models) &&
                               dist.kind == Distortion::Kind::Quadratic;
  const bool discrete_scalar =
      (f.kind == FunctionSpec::Kind::Parity ||
       (f.kind == FunctionSpec::Kind::Linear && all_discrete(models)));
  if (!gaussian_linear && !discrete_scalar) {
    entry.applicable = false;
    entry.flags.push_back("inapplicable: needs a discrete scalar target or Gaussian-linear model");
    return entry;
  }
  if (gaussian_linear && eps <= 0.0) {
    entry.applicable = false;
    entry.flags.push_back("inapplicable: quadratic-Gaussian form needs eps > 0");
    return entry;
  }

  double rz = 0.0;
  if (discrete_scalar) {
    auto z = z_distribution(models, f);
    std::vector<double> pmf(z.size());
    for (size_t i = 0; i < z.size(); ++i) pmf[i] = z[i].prob;
    auto effective = dist.kind == Distortion::Kind::Quadratic ? Distortion::Kind::Quadratic
                                                              : dist.kind;
    rz = rd_function_discrete(pmf, distortion_matrix(z, effective), eps);
    entry.inputs["r_z"] = rz;
    entry.flags.push_back("form: discrete rate-distortion");
  } else {
    entry.flags.push_back("form: quadratic-Gaussian");
  }

  for (const auto& s : candidate_sets(net, strategy)) {
    double numerator;
    if (gaussian_linear) {
      double var = gaussian_cond_variance(models, f, s);
      if (var <= 0.0) continue;  // Z determined by W_S
      numerator = mi_lower_gaussian_quadratic(0.5 * std::log2(kTwoPiE * var), eps);
    } else {
      auto mi = mutual_information_z_ws_bits(models, f, s);
      if (!mi) continue;
      numerator = mi_lower_rd(rz, *mi);
    }
    if (numerator <= 0.0) continue;
    double cs = cutset_capacity(net, s);
    if (cs == 0.0) {
      entry.infinite = true;
      entry.t_lower = kInf;
      entry.binding = set_label(net, s);
      break;
    }
    double value = numerator / cs;
    if (value > entry.t_lower) {
      entry.t_lower = value;
      entry.binding = set_label(net, s);
      entry.inputs["numerator"] = numerator;
      entry.inputs["c_s"] = cs;
    }
  }
  entry.vacuous = !entry.infinite && entry.t_lower <= 0.0;
  if (entry.vacuous) entry.flags.push_back("vacuous: numerator <= 0 on every candidate");
  return entry;
}

BoundEntry t_lower_sdpi_single(const Network& net, const std::vector<ObservationModel>& models,
                               const FunctionSpec& f, const Distortion& dist, double eps,
                               double delta, const CutsetStrategy& strategy,
                               const CsbpOptions& opts) {
  BoundEntry entry;
  entry.name = "sdpi-single";
  echo_common(entry, eps, delta);
  if (!all_discrete(models)) {
    entry.applicable = false;
    entry.flags.push_back("inapplicable: conditional entropy undefined for continuous observations");
    return entry;
  }
  auto candidates = candidate_sets(net, strategy);
  int skipped = 0;
  bool any = false;
  for (const auto& s : candidates) {
    auto cand = candidate_ell(models, f, dist, s, eps, delta, opts);
    if (!cand.condition_ok) {
      ++skipped;
      continue;
    }
    any = true;
    if (cand.ell.value <= 0.0 && !cand.ell.infinite) continue;
    auto h = cond_entropy_obs_bits(models, s);
    if (!h) continue;
    for (int v : s) {
      auto sd = node_sdpi(net, v);
      double value;
      bool inf = false;
      if (sd.in_degree == 0 || sd.eta_star == 0.0) {
        inf = true;  // no information can reach v
        value = kInf;
      } else if (cand.ell.infinite || cand.ell.value >= *h) {
        inf = true;  // contraction can never accumulate ell
        value = kInf;
      } else if (sd.eta_star >= 1.0) {
        value = 0.0;  // noiseless in-edge: no contraction, bound vacuous
      } else {
        double numerator = std::log2(1.0 / (1.0 - cand.ell.value / *h));
        double denominator = double(sd.in_degree) * std::log2(1.0 / (1.0 - sd.eta_star));
        value = numerator / denominator;
      }
      std::string binding = set_label(net, s) + ",v=" + net.id(v);
      if (inf && !entry.infinite) {
        entry.infinite = true;
        entry.t_lower = kInf;
        entry.binding = binding;
        if (!cand.ell.infinite) entry.inputs["ell"] = cand.ell.value;
        entry.inputs["h_cond"] = *h;
        if (cand.ell.value >= *h && !cand.ell.infinite)
          entry.flags.push_back("ell >= H(W_Sc|W_S): infinite bound at " + binding);
      } else if (!entry.infinite && value > entry.t_lower) {
        entry.t_lower = value;
        entry.binding = binding;
        entry.inputs["ell"] = cand.ell.value;
        entry.inputs["h_cond"] = *h;
        entry.inputs["eta_star"] = sd.eta_star;
        entry.inputs["in_degree"] = double(sd.in_degree);
      }
    }
  }
  if (skipped > 0)
    entry.flags.push_back("condition(E[L]<=1-delta) failed on " + std::to_string(skipped) +
                          " candidate set(s)");
  if (!any) {
    entry.applicable = false;
    entry.flags.push_back("inapplicable: small-ball condition failed on every candidate");
    return entry;
  }
  entry.vacuous = !entry.infinite && entry.t_lower <= 0.0;
  return entry;
}

BoundEntry t_lower_multicut(const Network& net, const SuccessivePartition& partition,
                            const std::vector<ObservationModel>& models, const FunctionSpec& f,
                            const Distortion& dist, double eps, double delta,
                            const CsbpOptions& opts,
                            const std::optional<std::vector<int>>& d_override) {
  BoundEntry entry;
  entry.name = "multicut";
  echo_common(entry, eps, delta);
  const int n = partition.blocks();
  entry.inputs["n_blocks"] = double(n);
  for (int i = 1; i < n; ++i)
    if (partition.left_bound[size_t(i)].empty())
      throw std::invalid_argument("t_lower_multicut: empty left-bound set at block " +
                                  std::to_string(i + 1));

  const std::vector<int>& d = d_override ? *d_override : partition.d;
  if (int(d.size()) != n - 1)
    throw std::invalid_argument("t_lower_multicut: d-sequence length mismatch");
  int delta_max = *std::max_element(d.begin(), d.end());
  entry.inputs["delta_max_d"] = double(delta_max);

  // Uniform per-edge SDPI upper bound.
  double eta = 0.0;
  bool eta_exact = true;
  double max_edge_capacity = 0.0;
  for (const auto& e : net.edges) {
    auto sd = sdpi_constant(e.ch);
    eta = std::max(eta, sd.value);
    eta_exact = eta_exact && sd.exact;
    max_edge_capacity = std::max(max_edge_capacity, capacity(e.ch));
  }
  if (!eta_exact) entry.flags.push_back("eta: conservative (some edge lacks a closed form)");
  double eta_tilde = 1.0 - std::pow(1.0 - eta, double(delta_max));
  entry.inputs["eta"] = eta;
  entry.inputs["eta_tilde"] = eta_tilde;

  NodeSet s1(partition.subsets[0].begin(), partition.subsets[0].end());
  NodeSet s1c = net.complement(s1);

  auto cand = candidate_ell(models, f, dist, s1c, eps, delta, opts);
  entry.inputs["expected_l"] = cand.expected_l;
  echo_csbp(entry, cand.est);
  if (!cand.condition_ok) {
    entry.applicable = false;
    entry.flags.push_back("inapplicable: E[L(W_{S1^c})] > 1-delta");
    return entry;
  }
  if (!cand.ell.infinite && cand.ell.value <= 0.0) {
    entry.vacuous = true;
    entry.flags.push_back("vacuous: ell(S1^c) <= 0");
    entry.binding = "partition n=" + std::to_string(n);
    return entry;
  }
  const double ell = cand.ell.infinite ? kInf : cand.ell.value;
  entry.inputs["ell"] = ell;

  auto h = cond_entropy_obs_bits(models, s1c);  // H(W_{S1}|W_{S1^c})
  double c_cut = cutset_capacity(net, s1c);
  if (h) entry.inputs["h_cond"] = *h;
  entry.inputs["c_s1c"] = c_cut;

  double best = 0.0;
  bool inf = false;
  std::string which;
  auto consider = [&](double value, const std::string& name) {
    if (std::isinf(value)) {
      inf = true;
      which = name;
    } else if (!inf && value > best) {
      best = value;
      which = name;
    }
  };

  // (a) Inversion of the exact uniform-eta chain forms. When the H-form
  // saturates below ell no finite T satisfies it; the capacity form alone
  // then carries the search.
  if (std::isinf(ell)) {
    consider(kInf, "chain-inversion");
  } else {
    std::optional<double> h_opt = h;
    auto t_int = invert_chain_closed(n, eta_tilde, h_opt, c_cut, ell);
    if (!t_int && h_opt && ell >= *h_opt) {
      entry.flags.push_back("h-form saturates below ell; inversion fell back to the c-form");
      t_int = invert_chain_closed(n, eta_tilde, std::nullopt, c_cut, ell);
    }
    if (t_int)
      consider(double(*t_int), "chain-inversion");
    else
      consider(kInf, "chain-inversion");
  }

  // (b) Explicit closed form with the Delta exponent, plus n-2.
  if (!h) {
    entry.flags.push_back("explicit-sdpi form skipped: H unavailable");
  } else if (std::isinf(ell) || ell >= *h) {
    entry.flags.push_back("explicit-sdpi form skipped: ell >= H");
  } else if (eta >= 1.0) {
    entry.flags.push_back("explicit-sdpi form skipped: eta = 1 (no contraction)");
  } else if (eta <= 0.0) {
    consider(kInf, "explicit-sdpi");
  } else {
    double inner = 1.0 - std::pow(ell / *h, 1.0 / double(n - 1));
    double value = std::log2(1.0 / inner) / (double(delta_max) * std::log2(1.0 / (1.0 - eta))) +
                   double(n - 2);
    consider(value, "explicit-sdpi");
  }

  // (c) Capacity form ell / C_{S1^c} + n-2.
  if (c_cut == 0.0 || std::isinf(ell))
    consider(kInf, "capacity+n-2");
  else
    consider(ell / c_cut + double(n - 2), "capacity+n-2");

  // (d) Large-partition threshold.
  if (n >= 4 && eta > 0.0 && !std::isinf(ell)) {
    double v2 = double(net.size()) * double(net.size());
    double lhs = max_edge_capacity * v2 * double(n - 3) * double(n - 3) / (4.0 * eta) *
                 std::exp(-2.0 * eta * eta * double(n - 3));
    if (lhs < ell)
      consider(2.0 + double(n - 3) / (2.0 * eta_tilde), "large-partition");
    else
      entry.flags.push_back("large-partition threshold skipped: premise fails");
  } else {
    entry.flags.push_back("large-partition threshold skipped: needs n >= 4");
  }

  entry.infinite = inf;
  entry.t_lower = inf ? kInf : best;
  entry.binding = "partition n=" + std::to_string(n) + " via " + which;
  entry.vacuous = !inf && best <= 0.0;
  return entry;
}

BoundReport t_lower_combined(const Network& net, const std::vector<ObservationModel>& models,
                             const FunctionSpec& f, const Distortion& dist, double eps,
                             double delta, const CutsetStrategy& strategy,
                             const SuccessivePartition* partition, const CsbpOptions& opts) {
  BoundReport report;
  report.add(t_lower_cutset(net, models, f, dist, eps, delta, strategy, opts));
  report.add(t_lower_sdpi_single(net, models, f, dist, eps, delta, strategy, opts));

  // The rate-distortion route bounds the expected-distortion time; with a
  // bounded distortion it transfers to T(eps,delta) >= T_max(eps+delta d_max)
  // and is reported at the shifted accuracy. The combined value keeps the
  // excess-criterion methods only.
  std::optional<double> d_max = dist.d_max;
  if (!d_max && dist.kind == Distortion::Kind::Hamming) d_max = 1.0;
  BoundEntry rd;
  if (d_max) {
    rd = t_lower_rd(net, models, f, dist, eps + delta * *d_max, strategy, opts);
    rd.flags.push_back("valid for T(eps,delta) through T_max(eps + delta*d_max)");
  } else {
    rd = t_lower_rd(net, models, f, dist, eps, strategy, opts);
    rd.flags.push_back("bounds T_max(eps) only (unbounded distortion)");
  }
  rd.informational = true;
  report.add(std::move(rd));

  if (partition)
    report.add(t_lower_multicut(net, *partition, models, f, dist, eps, delta, opts));
  report.finalize();
  return report;
}

std::vector<int> corollary_d_sequence(const std::string& kind, int n_blocks, int degree) {
  if (n_blocks < 2) throw std::invalid_argument("corollary_d_sequence: need >= 2 blocks");
  std::vector<int> d(size_t(n_blocks - 1), 0);
  if (kind == "chain") {
    std::fill(d.begin(), d.end(), 2);
  } else if (kind == "ring") {
    std::fill(d.begin(), d.end(), 4);
  } else if (kind == "tree") {
    std::fill(d.begin(), d.end(), degree);
  } else if (kind == "grid") {
    // d_i = d_{n+1-i} = 4(i-2)+6 up to the middle block 2(n-1); n odd.
    int n = n_blocks;
    for (int i = 2; i <= n; ++i) {
      int j = std::min(i, n + 1 - i);
      d[size_t(i - 2)] = (2 * i == n + 1) ? 2 * (n - 1) : 4 * (j - 2) + 6;
    }
  } else {
    throw std::invalid_argument("corollary_d_sequence: unknown kind \"" + kind + "\"");
  }
  return d;
}

namespace {

// BSC display forms from the topology corollaries: the capacity term is
// exact, the SDPI term uses the asymptotic log(n-1) numerator.
std::optional<BoundEntry> bsc_display_entry(const std::string& kind, const Channel& ch, int n,
                                            int cap_edges, int sdpi_denom, double ell, double h) {
  if (ch.kind != ChannelKind::Bsc) return std::nullopt;
  double p = ch.param;
  if (p <= 0.0 || p >= 0.5 || ell <= 0.0 || ell >= h) return std::nullopt;
  BoundEntry e;
  e.name = kind + "-bsc-display";
  e.informational = true;
  double cap_term = ell / (double(cap_edges) * (1.0 - binary_entropy(p)));
  double sdpi_term = (std::log2(double(n - 1)) + std::log2(1.0 / (1.0 - ell / h))) /
                     (double(sdpi_denom) * std::log2(1.0 / (4.0 * p * (1.0 - p))));
  e.t_lower = std::max(cap_term, sdpi_term) + double(n - 2);
  e.binding = cap_term >= sdpi_term ? "capacity term" : "sdpi term";
  e.flags.push_back("asymptotic-in-n display form; excluded from combined");
  e.inputs["ell"] = ell;
  e.inputs["h_cond"] = h;
  return e;
}

}  // namespace

BoundReport corollary_preset(const CorollaryParams& params) {
  BoundReport report;
  const std::string& kind = params.kind;

  if (kind == "averaging") {
    // Distributed averaging of Gaussian observations; T_avg(eps) is
    // bounded through T_max(|V| eps) with the quadratic-Gaussian form.
    if (params.size < 2) throw std::invalid_argument("averaging preset needs >= 2 nodes");
    Network net = params.size == 2 ? two_node_net(params.ch) : ring_net(params.size, params.ch);
    std::vector<ObservationModel> models(size_t(net.size()), gaussian(0.0, 1.0));
    FunctionSpec f = linear_function(
        std::vector<double>(size_t(net.size()), 1.0 / double(net.size())));
    Distortion dist{Distortion::Kind::Quadratic, std::nullopt};
    CutsetStrategy strategy;
    BoundEntry e = t_lower_rd(net, models, f, dist, double(net.size()) * params.eps, strategy,
                              params.csbp);
    e.name = "averaging-T_avg";
    e.flags.push_back("T_avg(eps) >= T_max(|V| eps)");
    report.add(std::move(e));
    report.finalize();
    return report;
  }

  if (kind == "dumbbell") {
    Network net = dumbbell_net(params.size, params.ch);
    std::vector<ObservationModel> models(size_t(net.size()), rademacher());
    FunctionSpec f = linear_function(std::vector<double>(size_t(net.size()), 1.0));
    Distortion dist{Distortion::Kind::Absolute, std::nullopt};
    int half = params.size / 2;
    NodeSet clique1, clique2;
    for (int v = 0; v < net.size(); ++v) (v < half ? clique1 : clique2).insert(v);
    CutsetStrategy strategy;
    strategy.mode = CutsetStrategy::Mode::UserList;
    strategy.user_sets = {clique1, clique2};
    BoundEntry e =
        t_lower_cutset(net, models, f, dist, params.eps, params.delta, strategy, params.csbp);
    e.name = "dumbbell-cutset";
    report.add(std::move(e));

    // Asymptotic display: (1/C) ((1-delta)/2 log2(pi |V| / 4) - h2(delta)).
    BoundEntry disp;
    disp.name = "dumbbell-asymptotic-display";
    disp.informational = true;
    double c_bridge = capacity(params.ch);
    disp.t_lower = std::max(0.0, ((1.0 - params.delta) / 2.0 *
                                      std::log2(M_PI * double(params.size) / 4.0) -
                                  binary_entropy(params.delta)) /
                                     c_bridge);
    disp.flags.push_back("central-binomial asymptotics; excluded from combined");
    report.add(std::move(disp));
    report.finalize();
    return report;
  }

  // Partitioned topologies.
  Network net;
  SuccessivePartition part;
  int degree = 0;
  if (kind == "chain") {
    net = chain_net(params.size, params.ch);
    part = bfs_partition(net, 0);
  } else if (kind == "ring") {
    if (params.size % 2 != 0)
      throw std::invalid_argument("ring preset follows the (2n-2)-node corollary: even size");
    net = ring_net(params.size, params.ch);
    part = bfs_partition(net, 0);
  } else if (kind == "grid") {
    net = grid_net(params.size, params.ch);
    part = bfs_partition(net, 0);  // corner root: the longest-path labeling
  } else if (kind == "tree") {
    degree = params.size;
    net = tree_net(degree, params.extra, params.ch);
    part = tree_path_partition(net, longest_path(net));
  } else {
    throw std::invalid_argument("corollary_preset: unknown kind \"" + kind + "\"");
  }

  std::vector<ObservationModel> models(size_t(net.size()), rademacher());
  FunctionSpec f = parity_function();
  Distortion dist{Distortion::Kind::Hamming, 1.0};
  auto d_seq = corollary_d_sequence(kind, part.blocks(), degree);
  BoundEntry e = t_lower_multicut(net, part, models, f, dist, params.eps, params.delta,
                                  params.csbp, d_seq);
  e.name = kind + "-multicut";
  report.add(e);

  NodeSet s1(part.subsets[0].begin(), part.subsets[0].end());
  NodeSet s1c = net.complement(s1);
  auto hopt = cond_entropy_obs_bits(models, s1c);
  auto csbp = expected_csbp(models, f, dist, s1c, params.eps, params.csbp);
  auto ell = mi_lower_smallball(csbp.value, params.delta);
  if (hopt && ell.valid && !ell.infinite) {
    int cap_edges = (kind == "ring" || kind == "grid") ? 2 : 1;
    int sdpi_denom = kind == "chain"  ? 2
                     : kind == "ring" ? 4
                     : kind == "grid" ? 2 * (part.blocks() - 1)
                                      : degree;
    auto disp = bsc_display_entry(kind, params.ch, part.blocks(), cap_edges, sdpi_denom,
                                  ell.value, *hopt);
    if (disp) report.add(std::move(*disp));
  }
  report.finalize();
  return report;
}

namespace {

std::vector<double> default_delta_grid() {
  return {0.5, 0.25, 0.1, 0.05, 0.01, 1e-3, 1e-4, 1e-6, 1e-9};
}

}  // namespace

double t_max_lower_from_excess(const std::function<double(double, double)>& t_excess_lower,
                               double eps, const std::vector<double>& delta_grid) {
  auto grid = delta_grid.empty() ? default_delta_grid() : delta_grid;
  double best = 0.0;
  for (double d : grid) {
    if (d <= 0.0 || d >= 1.0) throw std::invalid_argument("delta grid entries must lie in (0,1)");
    best = std::max(best, t_excess_lower(eps == 0.0 ? 0.0 : eps / d, d));
  }
  return best;
}

double t_avg_lower_from_excess(const std::function<double(double, double)>& t_excess_lower,
                               double eps, int node_count, const std::vector<double>& delta_grid) {
  if (node_count < 1) throw std::invalid_argument("t_avg_lower_from_excess: bad node count");
  return t_max_lower_from_excess(t_excess_lower, double(node_count) * eps, delta_grid);
}

AyasoComparison ayaso_baseline(const Network& net, const std::vector<ObservationModel>& models,
                               const FunctionSpec& f, double eps, double delta, double b,
                               double kappa, const CutsetStrategy& strategy) {
  if (f.kind != FunctionSpec::Kind::Linear)
    throw std::invalid_argument("ayaso_baseline: needs a linear target");
  if (b <= 0.0) throw std::invalid_argument("ayaso_baseline: B must be positive");
  for (const auto& m : models)
    if (m.kind != ObservationModel::Kind::Uniform || std::fabs(m.lo - 1.0) > 1e-12 ||
        std::fabs(m.hi - (1.0 + b)) > 1e-12)
      throw std::invalid_argument("ayaso_baseline: observations must be uniform([1,1+B])");
  if (eps <= 0.0 || delta < 0.0) throw std::invalid_argument("ayaso_baseline: bad eps/delta");

  double norm1 = 0.0;
  for (double a : f.coefficients) norm1 += std::fabs(a);
  const double v_count = double(net.size());

  AyasoComparison out;
  for (const auto& s : candidate_sets(net, strategy)) {
    double cs = cutset_capacity(net, s);
    if (cs == 0.0) continue;
    double sc_norm_sq = 0.0;
    for (int v = 0; v < net.size(); ++v)
      if (!s.count(v)) sc_norm_sq += f.coefficients[size_t(v)] * f.coefficients[size_t(v)];

    double arg = b * eps * eps + kappa * delta + std::pow(1.0 / b, 2.0 / v_count);
    double baseline = double(s.size()) / (2.0 * cs) * std::log2(1.0 / arg);
    if (baseline > out.eq_baseline) {
      out.eq_baseline = baseline;
      out.binding_baseline = set_label(net, s);
    }
    double limit = double(s.size()) / cs * std::log2(b) / v_count;
    out.eq_baseline_limit = std::max(out.eq_baseline_limit, limit);

    if (sc_norm_sq > 0.0) {
      double ours = (1.0 / cs) *
                    ((1.0 - delta) / 2.0 *
                         std::log2(b * b * sc_norm_sq /
                                   (48.0 * (b + 1.0) * (b + 1.0) * norm1 * norm1 * eps * eps)) -
                     binary_entropy(delta));
      if (ours > out.eq_ours) {
        out.eq_ours = ours;
        out.binding_ours = set_label(net, s);
      }
    }
  }
  return out;
}

}  // namespace netcomp
