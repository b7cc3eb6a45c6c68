#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "netcomp/network.hpp"

using namespace netcomp;

namespace {

NodeSet ids(const Network& net, std::initializer_list<const char*> names) {
  NodeSet s;
  for (const char* n : names) s.insert(net.index_of(n));
  return s;
}

std::vector<std::string> block_ids(const Network& net, const std::vector<int>& block) {
  std::vector<std::string> out;
  for (int v : block) out.push_back(net.id(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("network construction rules") {
  auto ch = bsc(0.3);
  CHECK_THROWS(make_network({"1", "2"}, {{"1", "9", ch}}));       // undeclared endpoint
  CHECK_THROWS(make_network({"1", "2"}, {{"1", "1", ch}}));       // self-loop
  CHECK_THROWS(make_network({"1", "2"}, {{"1", "2", ch}, {"1", "2", ch}}));  // duplicate
  CHECK_THROWS(make_network({"1", "1"}, {}));                     // duplicate node id

  auto net = two_node_net(ch);
  CHECK(net.size() == 2);
  CHECK(net.edges.size() == 2);
  CHECK(net.bidirectional());
}

TEST_CASE("cutset definition") {
  auto ch = bsc(0.3);
  auto pair = two_node_net(ch);
  auto cut = cutset(pair, ids(pair, {"2"}));
  REQUIRE(cut.size() == 1);
  CHECK(pair.id(pair.edges[size_t(cut[0])].from) == "1");
  CHECK(pair.id(pair.edges[size_t(cut[0])].to) == "2");

  auto ring = ring_net(6, ch);
  auto rc = cutset(ring, ids(ring, {"1"}));
  REQUIRE(rc.size() == 2);
  std::set<std::string> froms;
  for (int e : rc) froms.insert(ring.id(ring.edges[size_t(e)].from));
  CHECK(froms == std::set<std::string>{"2", "6"});

  CHECK_THROWS(cutset(pair, {}));
  CHECK_THROWS(cutset(pair, pair.all_nodes()));

  // Isolated vertex in a disconnected graph: empty cutset, zero capacity.
  auto disc = make_network({"1", "2", "3"}, {{"1", "2", ch}, {"2", "1", ch}});
  CHECK(cutset(disc, ids(disc, {"3"})).empty());
  CHECK(cutset_capacity(disc, ids(disc, {"3"})) == 0.0);
}

TEST_CASE("cutset capacity values") {
  auto ch = bsc(0.3);
  const double c = capacity(ch);  // 1 - h2(0.3)
  auto pair = two_node_net(ch);
  CHECK(cutset_capacity(pair, ids(pair, {"2"})) == doctest::Approx(0.11870910076930738));
  auto ring = ring_net(6, ch);
  CHECK(cutset_capacity(ring, ids(ring, {"1"})) == doctest::Approx(2 * c));
}

TEST_CASE("node_sdpi") {
  auto ch = bsc(0.3);
  auto pair = two_node_net(ch);
  auto s = node_sdpi(pair, pair.index_of("2"));
  CHECK(s.eta_star == doctest::Approx(0.16));
  CHECK(s.eta_upper == doctest::Approx(0.16));
  CHECK(s.in_degree == 1);

  auto ring = ring_net(6, ch);
  auto r = node_sdpi(ring, ring.index_of("1"));
  CHECK(r.in_degree == 2);
  CHECK(r.eta_star == doctest::Approx(0.16));
  CHECK(r.eta_upper == doctest::Approx(0.2944));  // 1-(1-0.16)^2

  auto src = make_network({"a", "b"}, {{"a", "b", ch}});
  auto none = node_sdpi(src, src.index_of("a"));
  CHECK(none.eta_upper == 0.0);
  CHECK(none.eta_star == 0.0);
  CHECK(none.in_degree == 0);
}

TEST_CASE("diameter") {
  auto ch = bsc(0.1);
  CHECK(diameter(chain_net(5, ch)) == 4);
  CHECK(diameter(ring_net(6, ch)) == 3);
  CHECK(diameter(grid_net(3, ch)) == 4);
  auto disc = make_network({"1", "2", "3"}, {{"1", "2", ch}, {"2", "1", ch}});
  CHECK_FALSE(diameter(disc).has_value());
}

TEST_CASE("bfs_partition on rings, chains and grids") {
  auto ch = bsc(0.3);

  auto ring = ring_net(6, ch);
  auto part = bfs_partition(ring, ring.index_of("1"));
  REQUIRE(part.blocks() == 4);
  CHECK(block_ids(ring, part.subsets[0]) == std::vector<std::string>{"1"});
  CHECK(block_ids(ring, part.subsets[1]) == std::vector<std::string>{"2", "6"});
  CHECK(block_ids(ring, part.subsets[2]) == std::vector<std::string>{"3", "5"});
  CHECK(block_ids(ring, part.subsets[3]) == std::vector<std::string>{"4"});

  auto chain = chain_net(5, ch);
  auto cpart = bfs_partition(chain, chain.index_of("1"));
  REQUIRE(cpart.blocks() == 5);
  for (int i = 0; i < 5; ++i) CHECK(cpart.subsets[size_t(i)].size() == 1);

  auto grid = grid_net(3, ch);
  auto gpart = bfs_partition(grid, grid.index_of("1"));
  REQUIRE(gpart.blocks() == 5);
  std::vector<size_t> sizes;
  for (const auto& s : gpart.subsets) sizes.push_back(s.size());
  CHECK(sizes == std::vector<size_t>{1, 2, 3, 2, 1});

  auto uni = make_network({"1", "2"}, {{"1", "2", ch}});
  CHECK_THROWS(bfs_partition(uni, 0));  // unidirectional edge
}

TEST_CASE("validate_partition checks the disjointness families") {
  auto ch = bsc(0.3);
  auto chain = chain_net(4, ch);
  // P_1 = {1}, P_2 = {1,3} skips node 2: the forward cutsets share (2,3)?
  // Enumerate: E_{P_1} = {(2,1)}, E_{P_2} = {(2,1),(2,3),(4,3)} share (2,1).
  std::vector<NodeSet> bad{ids(chain, {"1"}), ids(chain, {"1", "3"})};
  CHECK_THROWS_WITH_AS(validate_partition(chain, bad),
                       doctest::Contains("share edge"), std::invalid_argument);

  // Chain partition into singletons is valid with d_i = 2 on the interior.
  std::vector<NodeSet> nested{ids(chain, {"1"}), ids(chain, {"1", "2"}),
                              ids(chain, {"1", "2", "3"})};
  auto part = validate_partition(chain, nested);
  CHECK(part.blocks() == 4);
  CHECK(part.d == std::vector<int>{2, 2, 1});
  CHECK(part.delta == 2);

  // Non-nested input.
  std::vector<NodeSet> non_nested{ids(chain, {"2"}), ids(chain, {"1", "3"})};
  CHECK_THROWS(validate_partition(chain, non_nested));
}

TEST_CASE("ring partition d-sequence and left-bound sets") {
  auto ch = bsc(0.3);
  auto ring = ring_net(6, ch);
  auto part = bfs_partition(ring, ring.index_of("1"));
  // Exact counts from the definition: interior blocks see 4 merged
  // in-edges, the final singleton block sees only the 2 from its left.
  CHECK(part.d == std::vector<int>{4, 4, 2});
  CHECK(part.delta == 4);
  CHECK(block_ids(ring, part.left_bound[0]) == std::vector<std::string>{"1"});
  CHECK(block_ids(ring, part.left_bound[1]) == std::vector<std::string>{"2", "6"});
  CHECK(block_ids(ring, part.left_bound[3]) == std::vector<std::string>{"4"});
}

TEST_CASE("grid longest-path partition d-sequence") {
  auto grid = grid_net(3, bsc(0.3));
  auto part = bfs_partition(grid, grid.index_of("1"));
  CHECK(part.d == std::vector<int>{6, 8, 6, 2});
  CHECK(part.delta == 8);
}

TEST_CASE("bfs partitions validate and satisfy the block-locality law") {
  auto ch = bsc(0.2);
  for (auto net : {ring_net(8, ch), chain_net(6, ch), grid_net(3, ch), tree_net(3, 2, ch)}) {
    auto part = bfs_partition(net, 0);
    // Rebuild through validate_partition: must agree.
    std::vector<NodeSet> nested;
    for (const auto& p : part.nested) nested.emplace_back(p.begin(), p.end());
    auto again = validate_partition(net, nested);
    CHECK(again.subsets == part.subsets);
    CHECK(again.d == part.d);

    // d_i equals the sum of in-degrees of the block (ball construction).
    std::vector<int> block(size_t(net.size()), -1);
    for (int i = 0; i < part.blocks(); ++i)
      for (int v : part.subsets[size_t(i)]) block[size_t(v)] = i;
    for (int i = 1; i < part.blocks(); ++i) {
      int indeg = 0;
      for (int v : part.subsets[size_t(i)]) indeg += int(net.in_edges[size_t(v)].size());
      CHECK(part.d[size_t(i - 1)] == indeg);
    }
    // Edge locality |i-j| <= 1.
    for (const auto& e : net.edges)
      CHECK(std::abs(block[size_t(e.from)] - block[size_t(e.to)]) <= 1);
  }
}

TEST_CASE("reduce_to_chain eta composition") {
  auto ch = bsc(0.3);
  auto ring = ring_net(6, ch);
  auto part = bfs_partition(ring, ring.index_of("1"));
  auto chain = reduce_to_chain(ring, part, 0.16);
  REQUIRE(chain.n == 4);
  CHECK(chain.eta[0] == doctest::Approx(1.0 - std::pow(0.84, 4)));  // 0.50212864
  CHECK(chain.eta[1] == doctest::Approx(1.0 - std::pow(0.84, 4)));
  CHECK(chain.eta[2] == doctest::Approx(1.0 - std::pow(0.84, 2)));
  CHECK(chain.edge_capacity == doctest::Approx(2 * capacity(ch)));

  // Exact per-edge composition agrees with the uniform bound here.
  auto exact = reduce_to_chain(ring, part, std::nullopt);
  for (size_t i = 0; i < chain.eta.size(); ++i)
    CHECK(exact.eta[i] == doctest::Approx(chain.eta[i]));

  // Chain of BSC(p): singleton partition gives eta_i = 1-(1-eta)^2 inside.
  for (double p : {0.1, 0.3}) {
    auto cn = chain_net(5, bsc(p));
    auto cp = bfs_partition(cn, 0);
    auto cm = reduce_to_chain(cn, cp, sdpi_constant(bsc(p)).value);
    double eta = (1 - 2 * p) * (1 - 2 * p);
    for (size_t i = 0; i + 1 < cm.eta.size(); ++i)
      CHECK(cm.eta[i] == doctest::Approx(1.0 - std::pow(1.0 - eta, 2)));
  }

  // d-regular tree: interior blocks compose d edges.
  auto tree = tree_net(3, 2, bsc(0.3));
  auto tpart = tree_path_partition(tree, longest_path(tree));
  auto tchain = reduce_to_chain(tree, tpart, 0.16);
  REQUIRE(tchain.n == 5);
  for (size_t i = 0; i + 1 < tchain.eta.size(); ++i)
    CHECK(tchain.eta[i] == doctest::Approx(1.0 - std::pow(0.84, 3)));
}

TEST_CASE("topology presets") {
  auto ch = bsc(0.3);
  auto pair = two_node_net(ch);
  CHECK(pair.edges.size() == 2);

  CHECK(ring_net(6, ch).edges.size() == 12);
  CHECK_THROWS(ring_net(2, ch));
  CHECK_THROWS(grid_net(1, ch));

  auto db = dumbbell_net(10, ch);
  CHECK(db.size() == 10);
  // Two 5-cliques (2 * 20 directed edges) plus the bridging pair.
  CHECK(db.edges.size() == 2 * 20 + 2);
  CHECK(db.has_edge(db.index_of("5"), db.index_of("6")));
  CHECK_FALSE(db.has_edge(db.index_of("4"), db.index_of("7")));
  CHECK_THROWS(dumbbell_net(7, ch));

  auto tree = tree_net(3, 2, ch);
  CHECK(diameter(tree) == 4);
  for (int v = 0; v < tree.size(); ++v) {
    size_t deg = tree.out_edges[size_t(v)].size();
    CHECK((deg == 3 || deg == 1));  // 3-regular interior, leaves outside
  }

  TopologySpec spec;
  spec.kind = "ring";
  spec.size = 6;
  spec.ch = ch;
  CHECK(make_topology(spec).size() == 6);
  spec.kind = "bogus";
  CHECK_THROWS(make_topology(spec));
}

TEST_CASE("cutset determinism") {
  auto ring = ring_net(8, bsc(0.2));
  auto s = ids(ring, {"1", "2", "5"});
  CHECK(cutset(ring, s) == cutset(ring, s));
}
