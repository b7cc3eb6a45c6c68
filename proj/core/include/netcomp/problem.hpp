#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netcomp/network.hpp"
#include "netcomp/observation.hpp"

namespace netcomp {

// Query defaults applied by the parser; echoed in every report.
struct QuerySpec {
  double eps = 0.0;
  double delta = 0.1;
  std::string criterion = "excess";  // excess | max | avg
  std::string strategy = "auto";     // auto | all-subsets | singleton-complements | partition-prefixes
  int64_t samples = 100000;
  uint64_t seed = 12345;
  std::optional<NodeId> partition_root;
  // User partition given as blocks S_1..S_n (node-id lists); nested sets
  // are the block prefixes.
  std::optional<std::vector<std::vector<NodeId>>> partition_blocks;
};

struct ProblemSpec {
  Network net;
  std::vector<ObservationModel> models;  // aligned with net.nodes
  FunctionSpec f;
  Distortion dist;
  QuerySpec query;
};

// Structured problem file (JSON): network (topology preset or explicit
// nodes/edges/between sugar), observations, function, distortion, query.
// Unknown keys are rejected. The exact grammar is documented in README.md.
ProblemSpec parse_spec(const std::string& path);
ProblemSpec parse_spec_text(const std::string& text);

// Canonical normalized form (topology expanded to explicit edges, defaults
// filled). parse(serialize(x)) == x on the normalized form.
std::string serialize_spec(const ProblemSpec& spec);

// Nested sets for the query partition (block prefixes), when present.
std::optional<std::vector<NodeSet>> query_partition_nested(const ProblemSpec& spec);

}  // namespace netcomp
