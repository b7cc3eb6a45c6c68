#include "netcomp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "netcomp/stats.hpp"

namespace netcomp {

namespace {

double observation_bit_value(const ObservationModel& m, double u) {
  switch (m.kind) {
    case ObservationModel::Kind::Rademacher:
      return u < 0.5 ? -1.0 : 1.0;
    case ObservationModel::Kind::Bernoulli:
      return u < m.p ? 1.0 : 0.0;
    case ObservationModel::Kind::Gaussian:
      throw std::invalid_argument("simulator: gaussian observations need a custom algorithm");
    case ObservationModel::Kind::Uniform:
      throw std::invalid_argument("simulator: uniform observations need a custom algorithm");
    case ObservationModel::Kind::Finite: {
      double acc = 0.0;
      for (size_t i = 0; i < m.pmf.size(); ++i) {
        acc += m.pmf[i];
        if (u < acc) return m.support[i];
      }
      return m.support.back();
    }
  }
  throw std::logic_error("observation_bit_value: unknown kind");
}

int value_to_bit(const ObservationModel& m, double value) {
  if (!m.two_point()) throw std::invalid_argument("simulator: built-in algorithms need bits");
  switch (m.kind) {
    case ObservationModel::Kind::Rademacher:
      return value > 0.0 ? 1 : 0;
    case ObservationModel::Kind::Bernoulli:
      return value > 0.5 ? 1 : 0;
    case ObservationModel::Kind::Finite:
      return value == std::max(m.support[0], m.support[1]) ? 1 : 0;
    default:
      break;
  }
  throw std::logic_error("value_to_bit: unreachable");
}

int sample_channel(const Channel& ch, int x, double u) {
  if (x < 0 || x >= ch.input_size)
    throw std::invalid_argument("simulator: symbol outside the channel input alphabet");
  switch (ch.kind) {
    case ChannelKind::Bsc:
      return u < ch.param ? 1 - x : x;
    case ChannelKind::Bec:
      return u < ch.param ? 1 : (x == 0 ? 0 : 2);  // output 1 is the erasure symbol
    case ChannelKind::Matrix: {
      double acc = 0.0;
      for (int y = 0; y < ch.output_size; ++y) {
        acc += ch.k(x, y);
        if (u < acc) return y;
      }
      return ch.output_size - 1;
    }
  }
  throw std::logic_error("sample_channel: unknown kind");
}

std::vector<double> apply_function(const FunctionSpec& f,
                                   const std::vector<ObservationModel>& models,
                                   const std::vector<double>& w) {
  switch (f.kind) {
    case FunctionSpec::Kind::Parity: {
      int bit = 0;
      for (size_t v = 0; v < w.size(); ++v) bit ^= value_to_bit(models[v], w[v]);
      return {double(bit)};
    }
    case FunctionSpec::Kind::Linear: {
      double s = 0.0;
      for (size_t v = 0; v < w.size(); ++v) s += f.coefficients[v] * w[v];
      return {s};
    }
    case FunctionSpec::Kind::Identity:
      return w;
    case FunctionSpec::Kind::LinearVector: {
      std::vector<double> out(f.matrix.size(), 0.0);
      for (size_t r = 0; r < f.matrix.size(); ++r)
        for (size_t v = 0; v < w.size(); ++v) out[r] += f.matrix[r][v] * w[v];
      return out;
    }
  }
  throw std::logic_error("apply_function: unknown kind");
}

double distortion_value(const Distortion& dist, const std::vector<double>& z,
                        const std::vector<double>& zhat) {
  if (z.size() != zhat.size())
    throw std::invalid_argument("simulator: estimate dimension mismatch");
  switch (dist.kind) {
    case Distortion::Kind::Hamming:
      return z == zhat ? 0.0 : 1.0;
    case Distortion::Kind::Absolute:
      return std::fabs(z[0] - zhat[0]);
    case Distortion::Kind::Quadratic:
      return (z[0] - zhat[0]) * (z[0] - zhat[0]);
    case Distortion::Kind::Euclidean: {
      double s = 0.0;
      for (size_t i = 0; i < z.size(); ++i) s += (z[i] - zhat[i]) * (z[i] - zhat[i]);
      return std::sqrt(s);
    }
  }
  throw std::logic_error("distortion_value: unknown kind");
}

int majority_decode(const std::vector<int>& symbols) {
  int ones = 0;
  for (int s : symbols) ones += s;
  int zeros = int(symbols.size()) - ones;
  return ones > zeros ? 1 : 0;  // ties toward symbol 0
}

void require_bsc_edges(const Network& net) {
  for (const auto& e : net.edges)
    if (e.ch.kind != ChannelKind::Bsc)
      throw std::invalid_argument("simulator: built-in algorithms need BSC edges");
}

// Index of the in-edge of `node` coming from `from`, in in_edges order.
int in_slot(const Network& net, int node, int from) {
  const auto& in = net.in_edges[size_t(node)];
  for (size_t k = 0; k < in.size(); ++k)
    if (net.edges[size_t(in[k])].from == from) return int(k);
  return -1;
}

}  // namespace

Algorithm parity_repetition() {
  Algorithm alg;
  alg.kind = "parity_repetition";
  return alg;
}

Algorithm chain_relay() {
  Algorithm alg;
  alg.kind = "chain_relay";
  return alg;
}

Algorithm custom_algorithm(
    std::function<std::vector<int>(int, int, double, const ReceivedHistory&)> encode,
    std::function<std::vector<double>(int, double, const ReceivedHistory&)> estimate) {
  Algorithm alg;
  alg.kind = "custom";
  alg.encode = std::move(encode);
  alg.estimate = std::move(estimate);
  return alg;
}

namespace {

struct Runner {
  const Network& net;
  const std::vector<ObservationModel>& models;
  const FunctionSpec& f;
  const Algorithm& alg;
  int rounds;

  std::vector<int> bits;       // scratch, per sample
  std::vector<double> values;  // scratch, per sample

  std::vector<int> encode_node(int v, int t, const ReceivedHistory& hist) const {
    const auto& out = net.out_edges[size_t(v)];
    if (alg.kind == "parity_repetition")
      return std::vector<int>(out.size(), bits[size_t(v)]);
    if (alg.kind == "chain_relay") {
      // Forward along the chain what arrived from the opposite side in the
      // previous round; round 1 seeds the pipeline with the own bit.
      std::vector<int> symbols(out.size(), 0);
      for (size_t k = 0; k < out.size(); ++k) {
        int to = net.edges[size_t(out[k])].to;
        if (t == 1) {
          symbols[k] = bits[size_t(v)];
        } else {
          int behind = v + (v - to);  // mirror node: relay left-to-right or right-to-left
          int slot = (behind >= 0 && behind < net.size()) ? in_slot(net, v, behind) : -1;
          symbols[k] = slot >= 0 ? hist[size_t(slot)][size_t(t - 2)] : 0;
        }
      }
      return symbols;
    }
    return alg.encode(v, t, values[size_t(v)], hist);
  }

  std::vector<double> estimate_node(int v, const ReceivedHistory& hist) const {
    if (alg.kind == "parity_repetition") {
      const auto& in = net.in_edges[size_t(v)];
      std::vector<double> w_hat(models.size(), 0.0);
      std::vector<bool> known(models.size(), false);
      w_hat[size_t(v)] = values[size_t(v)];
      known[size_t(v)] = true;
      for (size_t k = 0; k < in.size(); ++k) {
        int from = net.edges[size_t(in[k])].from;
        int bit = rounds > 0 ? majority_decode(hist[k]) : 0;
        w_hat[size_t(from)] = bit_to_value(from, bit);
        known[size_t(from)] = true;
      }
      for (size_t u = 0; u < known.size(); ++u)
        if (!known[u]) w_hat[u] = bit_to_value(int(u), 0);
      return apply_function(f, models, w_hat);
    }
    if (alg.kind == "chain_relay") {
      std::vector<double> w_hat(models.size(), 0.0);
      w_hat[size_t(v)] = values[size_t(v)];
      for (int u = 0; u < net.size(); ++u) {
        if (u == v) continue;
        int hops = std::abs(u - v);
        int bit = 0;
        if (hops <= rounds) {
          int neighbor = u < v ? v - 1 : v + 1;
          int slot = in_slot(net, v, neighbor);
          bit = slot >= 0 ? hist[size_t(slot)][size_t(hops - 1)] : 0;
        }
        w_hat[size_t(u)] = bit_to_value(u, bit);
      }
      return apply_function(f, models, w_hat);
    }
    return alg.estimate(v, values[size_t(v)], hist);
  }

  double bit_to_value(int node, int bit) const {
    const auto& m = models[size_t(node)];
    switch (m.kind) {
      case ObservationModel::Kind::Rademacher:
        return bit ? 1.0 : -1.0;
      case ObservationModel::Kind::Bernoulli:
        return bit ? 1.0 : 0.0;
      case ObservationModel::Kind::Finite:
        return bit ? std::max(m.support[0], m.support[1]) : std::min(m.support[0], m.support[1]);
      default:
        throw std::logic_error("bit_to_value: continuous model");
    }
  }
};

}  // namespace

TrialResult run_algorithm(const Network& net, const std::vector<ObservationModel>& models,
                          const FunctionSpec& f, const Distortion& dist, const Algorithm& alg,
                          int rounds, double eps, const SimOptions& opts) {
  if (rounds < 0) throw std::invalid_argument("run_algorithm: T must be nonnegative");
  if (opts.samples < 1) throw std::invalid_argument("run_algorithm: need at least one sample");
  if (int(models.size()) != net.size())
    throw std::invalid_argument("run_algorithm: one observation model per node");
  check_problem_shape(models, f, dist);
  if (alg.kind == "parity_repetition") {
    require_bsc_edges(net);
    for (const auto& m : models)
      if (!m.two_point())
        throw std::invalid_argument("parity_repetition: needs two-point observations");
    for (int v = 0; v < net.size(); ++v)
      if (int(net.in_edges[size_t(v)].size()) != net.size() - 1 &&
          f.kind == FunctionSpec::Kind::Parity)
        throw std::invalid_argument("parity_repetition: parity needs a complete topology");
  } else if (alg.kind == "chain_relay") {
    require_bsc_edges(net);
    for (const auto& m : models)
      if (!m.two_point())
        throw std::invalid_argument("chain_relay: needs two-point observations");
    // Chain shape: node i linked to i-1 and i+1 in declaration order.
    for (int v = 0; v + 1 < net.size(); ++v)
      if (!net.has_edge(v, v + 1) || !net.has_edge(v + 1, v))
        throw std::invalid_argument("chain_relay: network is not a bidirected chain");
    for (const auto& e : net.edges)
      if (std::abs(e.from - e.to) != 1)
        throw std::invalid_argument("chain_relay: network is not a bidirected chain");
  } else if (alg.kind == "custom") {
    if (!alg.encode || !alg.estimate)
      throw std::invalid_argument("custom algorithm: missing encoder or estimator");
  } else {
    throw std::invalid_argument("unknown algorithm kind \"" + alg.kind + "\"");
  }

  const int n = net.size();
  const int n_edges = int(net.edges.size());
  TrialResult result;
  result.samples = opts.samples;
  result.seed = opts.seed;
  result.rounds = rounds;
  result.failures.assign(size_t(n), 0);
  result.edge_flips.assign(size_t(n_edges), 0);
  result.edge_uses.assign(size_t(n_edges), 0);

  const int workers = std::max(1, opts.workers);
  std::vector<std::vector<int64_t>> fail_acc(size_t(workers), std::vector<int64_t>(size_t(n), 0));
  std::vector<std::vector<int64_t>> flip_acc(size_t(workers),
                                             std::vector<int64_t>(size_t(n_edges), 0));
  std::vector<std::vector<int64_t>> use_acc(size_t(workers),
                                            std::vector<int64_t>(size_t(n_edges), 0));

  auto run_chunk = [&](int worker, int64_t lo, int64_t hi) {
    Runner runner{net, models, f, alg, rounds, {}, {}};
    runner.bits.assign(size_t(n), 0);
    runner.values.assign(size_t(n), 0.0);
    CounterRng obs_rng(opts.seed, 0x0b5e7a110ull);
    CounterRng ch_rng(opts.seed, 0xc4a27e1ull);
    std::vector<ReceivedHistory> hist(static_cast<size_t>(n));
    std::vector<std::vector<int>> sent(static_cast<size_t>(n));

    for (int64_t smp = lo; smp < hi; ++smp) {
      for (int v = 0; v < n; ++v) {
        double u = obs_rng.u01(uint64_t(smp), uint64_t(v));
        double value;
        if (models[size_t(v)].kind == ObservationModel::Kind::Gaussian)
          value = models[size_t(v)].mean +
                  std::sqrt(models[size_t(v)].variance) * obs_rng.normal(uint64_t(smp), uint64_t(v));
        else if (models[size_t(v)].kind == ObservationModel::Kind::Uniform)
          value = models[size_t(v)].lo + (models[size_t(v)].hi - models[size_t(v)].lo) * u;
        else
          value = observation_bit_value(models[size_t(v)], u);
        runner.values[size_t(v)] = value;
        runner.bits[size_t(v)] = models[size_t(v)].two_point()
                                     ? value_to_bit(models[size_t(v)], value)
                                     : 0;
      }
      auto z = apply_function(f, models, runner.values);

      for (int v = 0; v < n; ++v) {
        hist[size_t(v)].assign(net.in_edges[size_t(v)].size(), std::vector<int>(size_t(rounds), 0));
        sent[size_t(v)].assign(net.out_edges[size_t(v)].size(), 0);
      }
      for (int t = 1; t <= rounds; ++t) {
        // All encoders fire on the state at t-1 before any delivery.
        for (int v = 0; v < n; ++v) sent[size_t(v)] = runner.encode_node(v, t, hist[size_t(v)]);
        for (int v = 0; v < n; ++v) {
          const auto& out = net.out_edges[size_t(v)];
          for (size_t k = 0; k < out.size(); ++k) {
            int eid = out[k];
            const auto& edge = net.edges[size_t(eid)];
            int x = sent[size_t(v)][k];
            double u = ch_rng.u01(uint64_t(smp), uint64_t(eid), uint64_t(t));
            int y = sample_channel(edge.ch, x, u);
            if (edge.ch.kind == ChannelKind::Bsc) {
              use_acc[size_t(worker)][size_t(eid)] += 1;
              if (y != x) flip_acc[size_t(worker)][size_t(eid)] += 1;
            }
            int slot = in_slot(net, edge.to, v);
            hist[size_t(edge.to)][size_t(slot)][size_t(t - 1)] = y;
          }
        }
      }
      for (int v = 0; v < n; ++v) {
        auto zhat = runner.estimate_node(v, hist[size_t(v)]);
        if (distortion_value(dist, z, zhat) > eps) fail_acc[size_t(worker)][size_t(v)] += 1;
      }
    }
  };

  if (workers == 1) {
    run_chunk(0, 0, opts.samples);
  } else {
    std::vector<std::thread> pool;
    int64_t chunk = (opts.samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int64_t lo = int64_t(w) * chunk;
      int64_t hi = std::min<int64_t>(opts.samples, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_chunk, w, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (int w = 0; w < workers; ++w)
    for (int v = 0; v < n; ++v) result.failures[size_t(v)] += fail_acc[size_t(w)][size_t(v)];
  for (int w = 0; w < workers; ++w)
    for (int e = 0; e < n_edges; ++e) {
      result.edge_flips[size_t(e)] += flip_acc[size_t(w)][size_t(e)];
      result.edge_uses[size_t(e)] += use_acc[size_t(w)][size_t(e)];
    }
  result.p_hat.resize(size_t(n));
  result.ci99.resize(size_t(n));
  for (int v = 0; v < n; ++v) {
    result.p_hat[size_t(v)] = double(result.failures[size_t(v)]) / double(opts.samples);
    result.ci99[size_t(v)] =
        clopper_pearson_interval(result.failures[size_t(v)], opts.samples, 0.99);
  }
  return result;
}

double analytic_repetition_parity(double p, int rounds) {
  if (p < 0.0 || p > 0.5) throw std::invalid_argument("analytic_repetition_parity: p outside [0,1/2]");
  if (rounds < 0) throw std::invalid_argument("analytic_repetition_parity: T must be nonnegative");
  if (rounds == 0) return 0.5;  // best guess of the other bit is a coin flip
  double fail = 0.0;
  for (int k = 0; k <= rounds; ++k) {
    double pk = binomial_pmf(rounds, k, p);
    if (2 * k > rounds)
      fail += pk;
    else if (2 * k == rounds)
      fail += 0.5 * pk;  // ties decode toward 0: wrong for half the inputs
  }
  return fail;
}

EmpiricalTime empirical_computation_time(const Network& net,
                                         const std::vector<ObservationModel>& models,
                                         const FunctionSpec& f, const Distortion& dist,
                                         const Algorithm& alg, double eps, double delta,
                                         int t_max, const SimOptions& opts) {
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("empirical_computation_time: delta outside (0,1)");
  EmpiricalTime out;

  // Uniform-BSC parity repetition admits the exact binomial oracle.
  bool analytic = alg.kind == "parity_repetition" && f.kind == FunctionSpec::Kind::Parity;
  double p_uniform = -1.0;
  if (analytic) {
    for (const auto& e : net.edges) {
      if (e.ch.kind != ChannelKind::Bsc || (p_uniform >= 0.0 && e.ch.param != p_uniform)) {
        analytic = false;
        break;
      }
      p_uniform = e.ch.param;
    }
    for (const auto& m : models)
      if (!(m.kind == ObservationModel::Kind::Rademacher ||
            (m.kind == ObservationModel::Kind::Bernoulli && m.p == 0.5)))
        analytic = false;
    if (net.size() != 2) analytic = false;
  }
  out.analytic = analytic;

  for (int t = 0; t <= t_max; ++t) {
    out.tested.push_back(t);
    if (analytic) {
      double fail = analytic_repetition_parity(p_uniform, t);
      if (fail <= delta) {
        out.rounds = t;
        out.failure_at_t = fail;
        return out;
      }
    } else {
      auto trial = run_algorithm(net, models, f, dist, alg, t, eps, opts);
      double worst = 0.0;
      for (int v = 0; v < net.size(); ++v)
        worst = std::max(worst,
                         clopper_pearson_upper(trial.failures[size_t(v)], trial.samples, 0.99));
      if (worst <= delta) {
        out.rounds = t;
        out.failure_at_t = worst;
        return out;
      }
    }
  }
  return out;  // none certified within t_max
}

}  // namespace netcomp
