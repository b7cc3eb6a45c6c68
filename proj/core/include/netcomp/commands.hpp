#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "netcomp/problem.hpp"

namespace netcomp {

// Command implementations behind the CLI; they print the human-readable
// report plus a machine-readable JSON section to `out` and return the
// process exit code (0 iff no method errored; inapplicable methods are
// not errors).

int cmd_bounds(const ProblemSpec& spec, std::ostream& out,
               const std::optional<std::string>& csv_path = {});

int cmd_partition(const ProblemSpec& spec, const std::optional<NodeId>& root, std::ostream& out);

// rounds: explicit T, or nullopt for the smallest certified T.
int cmd_simulate(const ProblemSpec& spec, const std::string& algorithm,
                 std::optional<int> rounds, std::ostream& out,
                 const std::optional<std::string>& csv_path = {});

struct FigureParams {
  std::string which;  // cutset-vs-sdpi | chain-exact-vs-weak
  double p = 0.3;     // BSC parameter (cutset-vs-sdpi)
  int n = 8;          // chain length (chain-exact-vs-weak)
  double eta = 0.3;   // uniform SDPI constant (chain-exact-vs-weak)
  int t_min = 1;
  int t_max = 10;
};
int cmd_figures(const FigureParams& params, const std::optional<std::string>& csv_path,
                std::ostream& out);

int cmd_sdpi(const ProblemSpec& spec, double resolution, std::ostream& out);

// Formatting helpers shared by reports: probabilities with 6 significant
// digits, bit/time quantities with 6 decimals.
std::string fmt_prob(double v);
std::string fmt_bits(double v);

}  // namespace netcomp
