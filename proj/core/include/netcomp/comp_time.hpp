#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netcomp/concentration.hpp"
#include "netcomp/mi_bounds.hpp"
#include "netcomp/network.hpp"
#include "netcomp/observation.hpp"

namespace netcomp {

// One lower bound on computation time, produced by a single method.
struct BoundEntry {
  std::string name;
  double t_lower = 0.0;
  bool infinite = false;
  bool applicable = true;     // false: preconditions failed, value meaningless
  bool vacuous = false;       // bound collapsed to zero
  bool informational = false; // display-only (asymptotic forms etc.), not combined
  std::string binding;        // argmax set / partition / node
  std::vector<std::string> flags;
  std::map<std::string, double> inputs;  // echo of the key numeric inputs

  // Smallest integer time consistent with the bound; nullopt when infinite
  // or not applicable.
  std::optional<int64_t> t_ceil() const;
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  double combined = 0.0;
  bool combined_infinite = false;
  std::string combined_method;

  void add(BoundEntry entry);
  void finalize();  // combined = max over applicable non-informational entries
};

// Candidate-set generation for the max over S. The exact max is
// exponential; all subsets are enumerated only for |V| <= 16.
struct CutsetStrategy {
  enum class Mode { Auto, AllSubsets, SingletonComplements, PartitionPrefixes, UserList };
  Mode mode = Mode::Auto;
  std::vector<NodeSet> user_sets;
  const SuccessivePartition* partition = nullptr;  // for prefix candidates
};

std::vector<NodeSet> candidate_sets(const Network& net, const CutsetStrategy& strategy);

// Cutset-capacity bound: max_S l(S,eps,delta) / C_S, candidates that fail
// the small-ball condition E[L] <= 1-delta are skipped. A zero-capacity
// cutset with positive l yields an infinite bound (disconnected case).
BoundEntry t_lower_cutset(const Network& net, const std::vector<ObservationModel>& models,
                          const FunctionSpec& f, const Distortion& dist, double eps, double delta,
                          const CutsetStrategy& strategy, const CsbpOptions& opts = {});

// Rate-distortion bound on the maximum expected-distortion time T_max(eps):
// max_S (R_Z(eps) - I(Z;W_S)) / C_S for discrete targets, or the
// quadratic-Gaussian form (h(Z|W_S) + (1/2)log2(1/(2 pi e eps))) / C_S.
BoundEntry t_lower_rd(const Network& net, const std::vector<ObservationModel>& models,
                      const FunctionSpec& f, const Distortion& dist, double eps,
                      const CutsetStrategy& strategy, const CsbpOptions& opts = {});

// Single-cutset SDPI bound:
// max_S max_{v in S} log2(1 - l/H(W_{S^c}|W_S))^{-1} /
//                    (|E_v| log2(1-eta*_v)^{-1}).
// Needs discrete observations (finite conditional entropy).
BoundEntry t_lower_sdpi_single(const Network& net, const std::vector<ObservationModel>& models,
                               const FunctionSpec& f, const Distortion& dist, double eps,
                               double delta, const CutsetStrategy& strategy,
                               const CsbpOptions& opts = {});

// Runs every applicable single-cutset method (plus the multicut bound when
// a partition is supplied) and combines them. The rate-distortion entry
// joins the combination through the excess-to-expected conversion at
// eps + delta * d_max when the distortion is bounded; otherwise it is
// reported as informational.
BoundReport t_lower_combined(const Network& net, const std::vector<ObservationModel>& models,
                             const FunctionSpec& f, const Distortion& dist, double eps,
                             double delta, const CutsetStrategy& strategy,
                             const SuccessivePartition* partition = nullptr,
                             const CsbpOptions& opts = {});

// Multi-cutset bound from a successive partition: the strongest of
//  (a) inversion of the exact chain forms at eta~ = 1-(1-eta)^Delta,
//  (b) the explicit closed form with the Delta exponent plus n-2,
//  (c) l / C_{S_1^c} + n-2,
//  (d) the large-partition threshold 2 + (n-3)/(2 eta~) when its
//      premise holds.
// d_override substitutes a canonical d-sequence (corollary presets).
BoundEntry t_lower_multicut(const Network& net, const SuccessivePartition& partition,
                            const std::vector<ObservationModel>& models, const FunctionSpec& f,
                            const Distortion& dist, double eps, double delta,
                            const CsbpOptions& opts = {},
                            const std::optional<std::vector<int>>& d_override = {});

// Topology presets with the canonical partitions and d-sequences.
struct CorollaryParams {
  std::string kind;  // chain | ring | grid | tree | dumbbell | averaging
  int size = 0;      // chain/ring/dumbbell node count, grid side, tree degree, averaging |V|
  int extra = 0;     // tree depth
  Channel ch;
  double eps = 0.0;
  double delta = 0.1;
  CsbpOptions csbp;
};

// The canonical per-block degree sequence d_2..d_n used by the preset
// bounds: chain all 2, ring all 4, d-regular tree all d, grid
// 4(i-2)+6 rising to 2(n-1) in the middle and symmetric back down.
std::vector<int> corollary_d_sequence(const std::string& kind, int n_blocks, int degree);

BoundReport corollary_preset(const CorollaryParams& params);

// Criterion conversions. T_max(eps) >= sup_delta T(eps/delta, delta) and
// T_avg(eps) >= T_max(|V| eps); the sup runs over a delta grid.
double t_max_lower_from_excess(const std::function<double(double, double)>& t_excess_lower,
                               double eps, const std::vector<double>& delta_grid = {});
double t_avg_lower_from_excess(const std::function<double(double, double)>& t_excess_lower,
                               double eps, int node_count,
                               const std::vector<double>& delta_grid = {});

// Baseline comparison for uniform([1,1+B]) observations and a linear
// target under the relative-accuracy criterion.
struct AyasoComparison {
  double eq_baseline = 0.0;       // |S|/(2 C_S) log2 1/(B eps^2 + kappa delta + B^{-2/|V|})
  double eq_baseline_limit = 0.0; // its eps,delta -> 0 limit |S|/C_S log2(B)/|V|
  double eq_ours = 0.0;           // log-concave route, grows as log(1/eps)
  std::string binding_baseline;
  std::string binding_ours;
};
AyasoComparison ayaso_baseline(const Network& net, const std::vector<ObservationModel>& models,
                               const FunctionSpec& f, double eps, double delta, double b,
                               double kappa, const CutsetStrategy& strategy);

// Human-readable label "{id,id,...}" for a node set.
std::string set_label(const Network& net, const NodeSet& s);

}  // namespace netcomp
