#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netcomp/network.hpp"
#include "netcomp/observation.hpp"

namespace netcomp {

// Synchronized-round execution of T-step algorithms with deterministic
// per-node encoders and estimators. Per round, every encoder fires on the
// state at t-1, then every channel samples its noise independently; the
// estimators fire after round T.

// Received-symbol history of one node: hist[k][t-1] is the symbol received
// on the k-th in-edge (in Network::in_edges order) in round t.
using ReceivedHistory = std::vector<std::vector<int>>;

struct Algorithm {
  std::string kind;  // parity_repetition | chain_relay | custom

  // Custom hooks (used when kind == "custom"). The encoder returns one
  // input symbol per out-edge, in Network::out_edges order.
  std::function<std::vector<int>(int node, int round, double w, const ReceivedHistory&)> encode;
  std::function<std::vector<double>(int node, double w, const ReceivedHistory&)> estimate;
};

// Every node repeats its own bit on all out-edges each round; estimators
// majority-decode each in-neighbor (ties toward symbol 0) and fuse the
// decoded bits through the target function. Needs two-point observations,
// BSC edges, and a complete topology for parity.
Algorithm parity_repetition();

// Pipelined bidirectional relay on a chain: round 1 sends the own bit,
// later rounds forward what arrived from behind. After T = n-1 noiseless
// rounds every node holds every bit; estimators fuse through the target
// function (missing bits default to 0).
Algorithm chain_relay();

Algorithm custom_algorithm(
    std::function<std::vector<int>(int, int, double, const ReceivedHistory&)> encode,
    std::function<std::vector<double>(int, double, const ReceivedHistory&)> estimate);

struct TrialResult {
  int64_t samples = 0;
  uint64_t seed = 0;
  int rounds = 0;
  std::vector<int64_t> failures;  // per node: counts of d(Z, Zhat_v) > eps
  std::vector<double> p_hat;      // failures / samples
  std::vector<std::pair<double, double>> ci99;  // exact two-sided 99% binomial CI
  // Per-edge channel statistics (BSC edges only): symbol flips vs uses.
  std::vector<int64_t> edge_flips;
  std::vector<int64_t> edge_uses;
};

struct SimOptions {
  int64_t samples = 10000;
  uint64_t seed = 12345;
  int workers = 1;  // results are bitwise identical for any worker count
};

TrialResult run_algorithm(const Network& net, const std::vector<ObservationModel>& models,
                          const FunctionSpec& f, const Distortion& dist, const Algorithm& alg,
                          int rounds, double eps, const SimOptions& opts);

// Exact failure probability of the two-node repetition scheme with
// majority decoding after T rounds over BSC(p): P[Bin(T,p) > T/2] plus
// half the tie mass for even T; T = 0 is the coin-flip guess 1/2.
double analytic_repetition_parity(double p, int rounds);

struct EmpiricalTime {
  std::optional<int> rounds;      // smallest certified T, nullopt if > t_max
  double failure_at_t = 1.0;      // certified failure level at the returned T
  bool analytic = false;          // binomial oracle used instead of sampling
  std::vector<int> tested;        // T values probed
};

// Smallest T <= t_max whose per-node failure probability is certified
// <= delta: exactly for parity_repetition on uniform-BSC networks (the
// binomial oracle), otherwise by the exact one-sided 99% binomial upper
// confidence limit on Monte Carlo counts. The result upper-bounds the true
// computation time of the best algorithm.
EmpiricalTime empirical_computation_time(const Network& net,
                                         const std::vector<ObservationModel>& models,
                                         const FunctionSpec& f, const Distortion& dist,
                                         const Algorithm& alg, double eps, double delta,
                                         int t_max, const SimOptions& opts);

}  // namespace netcomp
