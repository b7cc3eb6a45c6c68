#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netcomp/commands.hpp"
#include "netcomp/version.hpp"

namespace {

struct CommonArgs {
  std::string spec_path;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<std::string> criterion;
  std::optional<std::string> strategy;
  std::optional<int64_t> samples;
  std::optional<uint64_t> seed;
};

void add_common(CLI::App* app, CommonArgs& args, bool need_spec = true) {
  auto* opt = app->add_option("--spec", args.spec_path, "problem spec file (JSON)");
  if (need_spec) opt->required();
  app->add_option("--eps", args.eps, "accuracy parameter (overrides the spec)");
  app->add_option("--delta", args.delta, "confidence parameter (overrides the spec)");
  app->add_option("--criterion", args.criterion, "excess | max | avg");
  app->add_option("--strategy", args.strategy,
                  "auto | all-subsets | singleton-complements | partition-prefixes");
  app->add_option("--samples", args.samples, "Monte Carlo sample count");
  app->add_option("--seed", args.seed, "master RNG seed");
}

netcomp::ProblemSpec load_spec(const CommonArgs& args) {
  auto spec = netcomp::parse_spec(args.spec_path);
  if (args.eps) spec.query.eps = *args.eps;
  if (args.delta) spec.query.delta = *args.delta;
  if (args.criterion) spec.query.criterion = *args.criterion;
  if (args.strategy) spec.query.strategy = *args.strategy;
  if (args.samples) spec.query.samples = *args.samples;
  if (args.seed) spec.query.seed = *args.seed;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computation-time lower bounds for in-network function computation"};
  app.set_version_flag("--version", netcomp::version_string);
  app.require_subcommand(1);

  CommonArgs bounds_args;
  std::optional<std::string> bounds_csv;
  auto* bounds = app.add_subcommand("bounds", "assemble lower bounds on computation time");
  add_common(bounds, bounds_args);
  bounds->add_option("--out", bounds_csv, "write a CSV summary to this path");

  CommonArgs part_args;
  std::optional<std::string> part_root;
  auto* partition = app.add_subcommand("partition", "build/validate a successive partition");
  add_common(partition, part_args);
  partition->add_option("--root", part_root, "root node for the ball partition");

  CommonArgs sim_args;
  std::string sim_alg = "parity_repetition";
  std::optional<std::string> sim_csv;
  std::string sim_rounds = "auto";
  auto* simulate = app.add_subcommand("simulate", "run a T-step algorithm");
  add_common(simulate, sim_args);
  simulate->add_option("--alg", sim_alg, "parity_repetition | chain_relay");
  simulate->add_option("--T", sim_rounds, "round count, or 'auto' for the smallest certified T");
  simulate->add_option("--out", sim_csv, "write per-node CSV to this path");

  netcomp::FigureParams fig;
  std::optional<std::string> fig_csv;
  auto* figures = app.add_subcommand("figures", "emit CSV curves");
  figures->add_option("--which", fig.which, "cutset-vs-sdpi | chain-exact-vs-weak")->required();
  figures->add_option("--p", fig.p, "BSC crossover probability");
  figures->add_option("--n", fig.n, "chain length");
  figures->add_option("--eta", fig.eta, "uniform SDPI constant");
  figures->add_option("--tmin", fig.t_min, "first T");
  figures->add_option("--tmax", fig.t_max, "last T");
  figures->add_option("--out", fig_csv, "CSV output path (stdout when omitted)");

  CommonArgs sdpi_args;
  double sdpi_resolution = 1e-3;
  auto* sdpi = app.add_subcommand("sdpi", "channel capacity and SDPI diagnostics");
  add_common(sdpi, sdpi_args);
  sdpi->add_option("--resolution", sdpi_resolution, "grid resolution for the lower estimate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) return netcomp::cmd_bounds(load_spec(bounds_args), std::cout, bounds_csv);
    if (partition->parsed()) {
      std::optional<netcomp::NodeId> root;
      if (part_root) root = *part_root;
      return netcomp::cmd_partition(load_spec(part_args), root, std::cout);
    }
    if (simulate->parsed()) {
      std::optional<int> rounds;
      if (sim_rounds != "auto") rounds = std::stoi(sim_rounds);
      return netcomp::cmd_simulate(load_spec(sim_args), sim_alg, rounds, std::cout, sim_csv);
    }
    if (figures->parsed()) return netcomp::cmd_figures(fig, fig_csv, std::cout);
    if (sdpi->parsed()) return netcomp::cmd_sdpi(load_spec(sdpi_args), sdpi_resolution, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
