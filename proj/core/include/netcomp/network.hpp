#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "netcomp/channels.hpp"

namespace netcomp {

using NodeId = std::string;
using NodeSet = std::set<int>;  // indices into Network::nodes

// Directed multigraph of point-to-point channels. At most one directed
// edge per ordered pair; self-loops are rejected in user input (they only
// arise in reduced chains, which are represented separately).
struct Network {
  struct Edge {
    int from = 0;
    int to = 0;
    Channel ch;
  };

  std::vector<NodeId> nodes;  // declaration order
  std::vector<Edge> edges;
  std::vector<std::vector<int>> in_edges;   // per node, edge indices
  std::vector<std::vector<int>> out_edges;

  int size() const { return int(nodes.size()); }
  int index_of(const NodeId& id) const;  // throws on unknown id
  const NodeId& id(int v) const { return nodes[size_t(v)]; }
  bool has_edge(int u, int v) const;
  bool bidirectional() const;  // (u,v) in E implies (v,u) in E

  NodeSet all_nodes() const;
  NodeSet complement(const NodeSet& s) const;
};

Network make_network(const std::vector<NodeId>& nodes,
                     const std::vector<std::tuple<NodeId, NodeId, Channel>>& edges);

// Cutset E_S: edges (u,v) with u not in S and v in S. S must be a
// nonempty proper subset. Returns edge indices in increasing order.
std::vector<int> cutset(const Network& net, const NodeSet& s);

// C_S: sum of Shannon capacities over the cutset E_S.
double cutset_capacity(const Network& net, const NodeSet& s);

struct NodeSdpi {
  double eta_upper = 0.0;  // 1 - (1 - eta*_v)^{|E_v|}, sound for the merged in-channel
  double eta_star = 0.0;   // max exact per-edge SDPI constant over E_v
  int in_degree = 0;
};

// SDPI data of the merged channel feeding node v. A node with no in-edges
// gets (0, 0, 0): no information can reach it.
NodeSdpi node_sdpi(const Network& net, int v);

// Max over node pairs of the bidirected graph distance; nullopt when the
// graph is disconnected (infinite diameter).
std::optional<int> diameter(const Network& net);

// Successive partition S_1..S_n: blocks of nested sets P_1 c ... c P_{n-1}
// whose forward cutsets are pairwise disjoint and whose reverse cutsets are
// pairwise disjoint.
struct SuccessivePartition {
  std::vector<std::vector<int>> subsets;     // S_1..S_n, each sorted
  std::vector<std::vector<int>> left_bound;  // left-bound nodes of each S_i
  std::vector<int> d;                        // d_2..d_n (merged in-degree counts)
  int delta = 0;                             // max over d_2..d_n
  std::vector<std::vector<int>> nested;      // P_1..P_{n-1}, each sorted

  int blocks() const { return int(subsets.size()); }
};

// Sphere partition around a root: S_i = nodes at graph distance i-1.
// Requires a connected network of bidirectional links. Rooted at an
// endpoint of a diameter-achieving pair this yields n-1 = diam(G).
SuccessivePartition bfs_partition(const Network& net, int root);

// Checks the two disjointness families for user-supplied nested sets and
// derives blocks, left-bound sets, the d_i counts and Delta. The
// left-bound set of S_1 is the lexicographically smallest node id in S_1.
SuccessivePartition validate_partition(const Network& net, const std::vector<NodeSet>& nested);

// Bidirected chain reduced from a partitioned network. Node i' aggregates
// S_i; its merged in-channel consists of the d_i edges entering S_i from
// the neighbor blocks plus the edges from S_i into its left-bound set.
struct ChainModel {
  int n = 0;
  std::vector<double> eta;  // eta upper bounds for nodes 2'..n'
  std::vector<int> d;       // d_2..d_n
  double edge_capacity = 0.0;        // C_{(1',2')} = C_{S_1^c}
  std::optional<double> h_cond;      // H(W_{S_1}|W_{S_1^c}), filled by callers
};

// With uniform_eta given, eta_{i'} = 1-(1-eta)^{d_i}; otherwise the exact
// per-edge constants compose as 1 - prod(1 - eta_e) over the merged edges
// (conservative 1 is used for edges without a closed-form constant).
// Throws if some left-bound set of S_2..S_n is empty.
ChainModel reduce_to_chain(const Network& net, const SuccessivePartition& part,
                           std::optional<double> uniform_eta = {});

// Topology presets. All links bidirectional with an identical channel per
// direction; nodes are labeled "1".."k".
Network two_node_net(const Channel& ch);
Network chain_net(int n, const Channel& ch);
Network ring_net(int n, const Channel& ch);
Network grid_net(int side, const Channel& ch);  // side x side grid, row-major labels
// Complete d-regular tree: internal nodes have degree exactly `degree`,
// leaves at distance `depth` from the root.
Network tree_net(int degree, int depth, const Channel& ch);
// Two cliques on k/2 nodes each joined by one bidirectional link.
Network dumbbell_net(int k, const Channel& ch);

struct TopologySpec {
  std::string kind;  // two_node | chain | ring | grid | tree | dumbbell
  int size = 0;      // nodes (chain/ring/dumbbell) or side (grid) or degree (tree)
  int extra = 0;     // tree depth
  Channel ch;
};
Network make_topology(const TopologySpec& spec);

// A longest path (diameter geodesic) in a connected bidirectional network.
std::vector<int> longest_path(const Network& net);

// Partition of a tree along a longest path 1-..-n: block i holds path node
// i and the off-path subtrees hanging from it (rooted at path node 1).
SuccessivePartition tree_path_partition(const Network& net, const std::vector<int>& path);

}  // namespace netcomp
