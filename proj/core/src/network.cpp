#include "netcomp/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "netcomp/stats.hpp"

namespace netcomp {

int Network::index_of(const NodeId& id) const {
  for (int i = 0; i < size(); ++i)
    if (nodes[size_t(i)] == id) return i;
  throw std::invalid_argument("unknown node id \"" + id + "\"");
}

bool Network::has_edge(int u, int v) const {
  for (int e : out_edges[size_t(u)])
    if (edges[size_t(e)].to == v) return true;
  return false;
}

bool Network::bidirectional() const {
  for (const auto& e : edges)
    if (!has_edge(e.to, e.from)) return false;
  return true;
}

NodeSet Network::all_nodes() const {
  NodeSet s;
  for (int i = 0; i < size(); ++i) s.insert(i);
  return s;
}

NodeSet Network::complement(const NodeSet& s) const {
  NodeSet out;
  for (int i = 0; i < size(); ++i)
    if (!s.count(i)) out.insert(i);
  return out;
}

Network make_network(const std::vector<NodeId>& nodes,
                     const std::vector<std::tuple<NodeId, NodeId, Channel>>& edges) {
  if (nodes.empty()) throw std::invalid_argument("network must have at least one node");
  Network net;
  net.nodes = nodes;
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < net.size(); ++i) {
    auto [it, fresh] = index.emplace(nodes[size_t(i)], i);
    if (!fresh) throw std::invalid_argument("duplicate node id \"" + nodes[size_t(i)] + "\"");
  }
  net.in_edges.resize(nodes.size());
  net.out_edges.resize(nodes.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& [from, to, ch] : edges) {
    auto fi = index.find(from);
    if (fi == index.end()) throw std::invalid_argument("edge endpoint \"" + from + "\" not declared");
    auto ti = index.find(to);
    if (ti == index.end()) throw std::invalid_argument("edge endpoint \"" + to + "\" not declared");
    int u = fi->second, v = ti->second;
    if (u == v) throw std::invalid_argument("self-loop at node \"" + from + "\" not allowed");
    if (!seen.insert({u, v}).second)
      throw std::invalid_argument("duplicate edge (" + from + "," + to + ")");
    int eid = int(net.edges.size());
    net.edges.push_back({u, v, ch});
    net.out_edges[size_t(u)].push_back(eid);
    net.in_edges[size_t(v)].push_back(eid);
  }
  return net;
}

std::vector<int> cutset(const Network& net, const NodeSet& s) {
  if (s.empty() || int(s.size()) == net.size())
    throw std::invalid_argument("cutset: S must be a nonempty proper subset");
  std::vector<int> out;
  for (int e = 0; e < int(net.edges.size()); ++e) {
    const auto& ed = net.edges[size_t(e)];
    if (!s.count(ed.from) && s.count(ed.to)) out.push_back(e);
  }
  return out;
}

double cutset_capacity(const Network& net, const NodeSet& s) {
  double total = 0.0;
  for (int e : cutset(net, s)) total += capacity(net.edges[size_t(e)].ch);
  return total;
}

NodeSdpi node_sdpi(const Network& net, int v) {
  const auto& in = net.in_edges[size_t(v)];
  if (in.empty()) return {0.0, 0.0, 0};
  double eta_star = 0.0;
  for (int e : in) eta_star = std::max(eta_star, sdpi_constant(net.edges[size_t(e)].ch).value);
  return {sdpi_product_upper(eta_star, int(in.size())), eta_star, int(in.size())};
}

namespace {

// BFS distances treating every directed edge as traversable both ways.
std::vector<int> bidirected_distances(const Network& net, int root) {
  std::vector<int> dist(size_t(net.size()), -1);
  std::deque<int> queue{root};
  dist[size_t(root)] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    auto visit = [&](int w) {
      if (dist[size_t(w)] < 0) {
        dist[size_t(w)] = dist[size_t(u)] + 1;
        queue.push_back(w);
      }
    };
    for (int e : net.out_edges[size_t(u)]) visit(net.edges[size_t(e)].to);
    for (int e : net.in_edges[size_t(u)]) visit(net.edges[size_t(e)].from);
  }
  return dist;
}

}  // namespace

std::optional<int> diameter(const Network& net) {
  int best = 0;
  for (int v = 0; v < net.size(); ++v) {
    auto dist = bidirected_distances(net, v);
    for (int d : dist) {
      if (d < 0) return std::nullopt;  // disconnected
      best = std::max(best, d);
    }
  }
  return best;
}

SuccessivePartition bfs_partition(const Network& net, int root) {
  if (root < 0 || root >= net.size()) throw std::invalid_argument("bfs_partition: bad root");
  if (!net.bidirectional())
    throw std::invalid_argument("bfs_partition: network has a unidirectional edge");
  auto dist = bidirected_distances(net, root);
  int radius = 0;
  for (int d : dist) {
    if (d < 0) throw std::invalid_argument("bfs_partition: network is disconnected");
    radius = std::max(radius, d);
  }
  std::vector<NodeSet> nested(static_cast<size_t>(radius));  // P_i = ball of radius i-1
  for (int v = 0; v < net.size(); ++v)
    for (int i = dist[size_t(v)] + 1; i <= radius; ++i) nested[size_t(i - 1)].insert(v);
  return validate_partition(net, nested);
}

SuccessivePartition validate_partition(const Network& net, const std::vector<NodeSet>& nested) {
  if (nested.empty()) throw std::invalid_argument("validate_partition: no nested sets given");
  const int n = int(nested.size()) + 1;
  for (int i = 0; i < n - 1; ++i) {
    if (nested[size_t(i)].empty() || int(nested[size_t(i)].size()) == net.size())
      throw std::invalid_argument("validate_partition: P_" + std::to_string(i + 1) +
                                  " must be a nonempty proper subset");
    if (i > 0 && !std::includes(nested[size_t(i)].begin(), nested[size_t(i)].end(),
                                nested[size_t(i - 1)].begin(), nested[size_t(i - 1)].end()))
      throw std::invalid_argument("validate_partition: P_" + std::to_string(i) +
                                  " is not contained in P_" + std::to_string(i + 1));
    if (i > 0 && nested[size_t(i)].size() == nested[size_t(i - 1)].size())
      throw std::invalid_argument("validate_partition: nesting is not strict at P_" +
                                  std::to_string(i + 1));
  }

  // Both cutset families must be pairwise disjoint.
  std::vector<int> fwd_owner(net.edges.size(), -1), rev_owner(net.edges.size(), -1);
  for (int i = 0; i < n - 1; ++i) {
    const NodeSet& p = nested[size_t(i)];
    for (int e : cutset(net, p)) {
      if (fwd_owner[size_t(e)] >= 0)
        throw std::invalid_argument(
            "validate_partition: cutsets of P_" + std::to_string(fwd_owner[size_t(e)] + 1) +
            " and P_" + std::to_string(i + 1) + " share edge (" +
            net.id(net.edges[size_t(e)].from) + "," + net.id(net.edges[size_t(e)].to) + ")");
      fwd_owner[size_t(e)] = i;
    }
    for (int e : cutset(net, net.complement(p))) {
      if (rev_owner[size_t(e)] >= 0)
        throw std::invalid_argument(
            "validate_partition: complement cutsets of P_" + std::to_string(rev_owner[size_t(e)] + 1) +
            " and P_" + std::to_string(i + 1) + " share edge (" +
            net.id(net.edges[size_t(e)].from) + "," + net.id(net.edges[size_t(e)].to) + ")");
      rev_owner[size_t(e)] = i;
    }
  }

  SuccessivePartition part;
  part.nested.reserve(size_t(n - 1));
  for (const auto& p : nested) part.nested.emplace_back(p.begin(), p.end());

  // Blocks S_i = P_i \ P_{i-1}.
  std::vector<int> block(size_t(net.size()), n - 1);
  for (int i = n - 2; i >= 0; --i)
    for (int v : nested[size_t(i)]) block[size_t(v)] = i;
  part.subsets.assign(size_t(n), {});
  for (int v = 0; v < net.size(); ++v) part.subsets[size_t(block[size_t(v)])].push_back(v);

  // Edges may only connect blocks at distance <= 1 in a valid successive
  // partition; verified rather than assumed.
  for (const auto& e : net.edges) {
    int bi = block[size_t(e.from)], bj = block[size_t(e.to)];
    if (std::abs(bi - bj) > 1)
      throw std::invalid_argument("validate_partition: edge (" + net.id(e.from) + "," +
                                  net.id(e.to) + ") joins non-adjacent blocks S_" +
                                  std::to_string(bi + 1) + " and S_" + std::to_string(bj + 1));
  }

  // Left-bound sets; S_1 gets the lexicographically smallest id.
  part.left_bound.assign(size_t(n), {});
  {
    int best = -1;
    for (int v : part.subsets[0])
      if (best < 0 || net.id(v) < net.id(best)) best = v;
    part.left_bound[0] = {best};
  }
  for (int i = 1; i < n; ++i) {
    std::set<int> lb;
    for (const auto& e : net.edges)
      if (block[size_t(e.from)] == i && block[size_t(e.to)] == i - 1) lb.insert(e.from);
    part.left_bound[size_t(i)].assign(lb.begin(), lb.end());
  }

  // d_i: edges entering S_i from S_{i-1} and S_{i+1}, plus edges from S_i
  // into its left-bound set.
  part.d.assign(size_t(n - 1), 0);
  for (const auto& e : net.edges) {
    int bi = block[size_t(e.from)], bj = block[size_t(e.to)];
    if (bj >= 1 && std::abs(bi - bj) == 1) part.d[size_t(bj - 1)] += 1;
    if (bj >= 1 && bi == bj) {
      const auto& lb = part.left_bound[size_t(bj)];
      if (std::binary_search(lb.begin(), lb.end(), e.to)) part.d[size_t(bj - 1)] += 1;
    }
  }
  part.delta = part.d.empty() ? 0 : *std::max_element(part.d.begin(), part.d.end());
  return part;
}

ChainModel reduce_to_chain(const Network& net, const SuccessivePartition& part,
                           std::optional<double> uniform_eta) {
  const int n = part.blocks();
  if (n < 2) throw std::invalid_argument("reduce_to_chain: need at least two blocks");
  if (uniform_eta && (*uniform_eta < 0.0 || *uniform_eta > 1.0))
    throw std::invalid_argument("reduce_to_chain: uniform eta outside [0,1]");
  for (int i = 1; i < n; ++i)
    if (part.left_bound[size_t(i)].empty())
      throw std::invalid_argument("reduce_to_chain: block S_" + std::to_string(i + 1) +
                                  " has an empty left-bound set");

  std::vector<int> block(size_t(net.size()), -1);
  for (int i = 0; i < n; ++i)
    for (int v : part.subsets[size_t(i)]) block[size_t(v)] = i;

  ChainModel chain;
  chain.n = n;
  chain.d = part.d;
  chain.eta.assign(size_t(n - 1), 0.0);
  if (uniform_eta) {
    for (int i = 1; i < n; ++i)
      chain.eta[size_t(i - 1)] = 1.0 - std::pow(1.0 - *uniform_eta, double(part.d[size_t(i - 1)]));
  } else {
    // Product composition over every merged in-edge of node i'.
    std::vector<double> one_minus(size_t(n - 1), 1.0);
    for (const auto& e : net.edges) {
      int bi = block[size_t(e.from)], bj = block[size_t(e.to)];
      bool merged = false;
      if (bj >= 1 && std::abs(bi - bj) == 1) merged = true;
      if (bj >= 1 && bi == bj) {
        const auto& lb = part.left_bound[size_t(bj)];
        merged = std::binary_search(lb.begin(), lb.end(), e.to);
      }
      if (merged) one_minus[size_t(bj - 1)] *= 1.0 - sdpi_constant(e.ch).value;
    }
    for (int i = 1; i < n; ++i) chain.eta[size_t(i - 1)] = 1.0 - one_minus[size_t(i - 1)];
  }

  NodeSet s1c;
  for (int v = 0; v < net.size(); ++v)
    if (block[size_t(v)] != 0) s1c.insert(v);
  chain.edge_capacity = cutset_capacity(net, s1c);
  return chain;
}

namespace {

std::vector<NodeId> numbered_nodes(int k) {
  std::vector<NodeId> out;
  out.reserve(size_t(k));
  for (int i = 1; i <= k; ++i) out.push_back(std::to_string(i));
  return out;
}

using EdgeList = std::vector<std::tuple<NodeId, NodeId, Channel>>;

void link(EdgeList& edges, int a, int b, const Channel& ch) {
  edges.emplace_back(std::to_string(a), std::to_string(b), ch);
  edges.emplace_back(std::to_string(b), std::to_string(a), ch);
}

}  // namespace

Network two_node_net(const Channel& ch) {
  EdgeList edges;
  link(edges, 1, 2, ch);
  return make_network(numbered_nodes(2), edges);
}

Network chain_net(int n, const Channel& ch) {
  if (n < 2) throw std::invalid_argument("chain_net: need at least 2 nodes");
  EdgeList edges;
  for (int i = 1; i < n; ++i) link(edges, i, i + 1, ch);
  return make_network(numbered_nodes(n), edges);
}

Network ring_net(int n, const Channel& ch) {
  if (n < 3) throw std::invalid_argument("ring_net: need at least 3 nodes");
  EdgeList edges;
  for (int i = 1; i < n; ++i) link(edges, i, i + 1, ch);
  link(edges, n, 1, ch);
  return make_network(numbered_nodes(n), edges);
}

Network grid_net(int side, const Channel& ch) {
  if (side < 2) throw std::invalid_argument("grid_net: side must be >= 2");
  EdgeList edges;
  auto id = [side](int r, int c) { return (r - 1) * side + c; };
  for (int r = 1; r <= side; ++r) {
    for (int c = 1; c <= side; ++c) {
      if (c < side) link(edges, id(r, c), id(r, c + 1), ch);
      if (r < side) link(edges, id(r, c), id(r + 1, c), ch);
    }
  }
  return make_network(numbered_nodes(side * side), edges);
}

Network tree_net(int degree, int depth, const Channel& ch) {
  if (degree < 2) throw std::invalid_argument("tree_net: degree must be >= 2");
  if (depth < 1) throw std::invalid_argument("tree_net: depth must be >= 1");
  // Breadth-first construction: the root has `degree` children, interior
  // nodes degree-1 children, leaves at the given depth.
  EdgeList edges;
  int next = 1;
  std::vector<std::pair<int, int>> frontier{{next++, 0}};  // (node, depth)
  size_t head = 0;
  while (head < frontier.size()) {
    auto [v, d] = frontier[head++];
    if (d == depth) continue;
    int kids = (d == 0) ? degree : degree - 1;
    for (int c = 0; c < kids; ++c) {
      int u = next++;
      link(edges, v, u, ch);
      frontier.push_back({u, d + 1});
    }
  }
  return make_network(numbered_nodes(next - 1), edges);
}

Network dumbbell_net(int k, const Channel& ch) {
  if (k < 4 || k % 2 != 0)
    throw std::invalid_argument("dumbbell_net: node count must be even and >= 4");
  EdgeList edges;
  int half = k / 2;
  for (int a = 1; a <= half; ++a)
    for (int b = a + 1; b <= half; ++b) link(edges, a, b, ch);
  for (int a = half + 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) link(edges, a, b, ch);
  link(edges, half, half + 1, ch);
  return make_network(numbered_nodes(k), edges);
}

Network make_topology(const TopologySpec& spec) {
  if (spec.kind == "two_node") return two_node_net(spec.ch);
  if (spec.kind == "chain") return chain_net(spec.size, spec.ch);
  if (spec.kind == "ring") return ring_net(spec.size, spec.ch);
  if (spec.kind == "grid") return grid_net(spec.size, spec.ch);
  if (spec.kind == "tree") return tree_net(spec.size, spec.extra, spec.ch);
  if (spec.kind == "dumbbell") return dumbbell_net(spec.size, spec.ch);
  throw std::invalid_argument("make_topology: unknown kind \"" + spec.kind + "\"");
}

std::vector<int> longest_path(const Network& net) {
  // Double BFS finds a diameter endpoint pair on trees and a good (not
  // necessarily optimal) geodesic elsewhere; we then return an actual
  // shortest path between the endpoints via parent tracking.
  auto d0 = bidirected_distances(net, 0);
  for (int d : d0)
    if (d < 0) throw std::invalid_argument("longest_path: network is disconnected");
  int a = int(std::max_element(d0.begin(), d0.end()) - d0.begin());
  auto da = bidirected_distances(net, a);
  int b = int(std::max_element(da.begin(), da.end()) - da.begin());
  // Walk back from b to a along decreasing distance.
  std::vector<int> path{b};
  int cur = b;
  while (cur != a) {
    int nxt = -1;
    auto consider = [&](int w) {
      if (da[size_t(w)] == da[size_t(cur)] - 1 && (nxt < 0 || net.id(w) < net.id(nxt))) nxt = w;
    };
    for (int e : net.in_edges[size_t(cur)]) consider(net.edges[size_t(e)].from);
    for (int e : net.out_edges[size_t(cur)]) consider(net.edges[size_t(e)].to);
    cur = nxt;
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());  // from a to b
  return path;
}

SuccessivePartition tree_path_partition(const Network& net, const std::vector<int>& path) {
  if (path.size() < 2) throw std::invalid_argument("tree_path_partition: path too short");
  if (!net.bidirectional())
    throw std::invalid_argument("tree_path_partition: network has a unidirectional edge");
  const int n = int(path.size());
  std::vector<int> on_path(size_t(net.size()), -1);
  for (int i = 0; i < n; ++i) on_path[size_t(path[size_t(i)])] = i;

  // Root the tree at path node 1; every node joins the block of the last
  // path node on its root path.
  std::vector<int> parent(size_t(net.size()), -2);
  std::vector<int> blockof(size_t(net.size()), -1);
  std::deque<int> queue{path[0]};
  parent[size_t(path[0])] = -1;
  blockof[size_t(path[0])] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int e : net.out_edges[size_t(u)]) {
      int w = net.edges[size_t(e)].to;
      if (parent[size_t(w)] != -2) continue;
      parent[size_t(w)] = u;
      blockof[size_t(w)] = (on_path[size_t(w)] >= 0) ? on_path[size_t(w)] : blockof[size_t(u)];
      queue.push_back(w);
    }
  }
  for (int v = 0; v < net.size(); ++v)
    if (blockof[size_t(v)] < 0)
      throw std::invalid_argument("tree_path_partition: network is disconnected");

  std::vector<NodeSet> nested(size_t(n - 1));
  for (int v = 0; v < net.size(); ++v)
    for (int i = blockof[size_t(v)]; i < n - 1; ++i) nested[size_t(i)].insert(v);
  return validate_partition(net, nested);
}

}  // namespace netcomp
