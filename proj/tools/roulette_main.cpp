#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "roulette/bounds.hpp"
#include "roulette/cli.hpp"
#include "roulette/enclosure.hpp"

using namespace roulette;

int main(int argc, char** argv) {
  CLI::App app{"certified analysis of the group shooting process"};
  app.require_subcommand(1);

  RunConfig config;
  std::string scale_str = "10000000000";
  if (const char* dir = std::getenv("ROULETTE_CACHE_DIR")) config.cache_dir = dir;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", config.n, "max n (0 = command default)");
    cmd->add_option("--scale", scale_str, "scale for certified bounds (default 10^10)");
    cmd->add_option("--seed", config.seed, "simulation seed");
    cmd->add_option("--threads", config.threads, "worker threads (0 = hardware)");
    cmd->add_option("--precision", config.precision_digits, "enclosure width 10^-d");
    cmd->add_option("--out", config.out, "output file");
    cmd->add_option("--cache-dir", config.cache_dir, "bounds cache directory");
    cmd->add_flag("--force-recompute", config.force_recompute, "ignore existing cache");
    cmd->add_flag("--cache-only", config.cache_only, "never recompute a missing cache");
    cmd->add_flag("--quiet", config.quiet, "suppress progress output");
  };

  CLI::App* bounds = app.add_subcommand("bounds", "compute certified bounds and cache them");
  add_common(bounds);
  CLI::App* certify = app.add_subcommand("certify", "run the non-convergence certificate");
  add_common(certify);
  CLI::App* figure = app.add_subcommand("figure", "emit the bounds-vs-log(n) CSV");
  add_common(figure);

  CLI::App* simulate = app.add_subcommand("simulate", "coupled-chain simulations");
  simulate->require_subcommand(1);
  CLI::App* sweep = simulate->add_subcommand("round-sweep", "pathwise invariant audit");
  add_common(sweep);
  sweep->add_option("--lo", config.sweep_lo, "smallest n");
  sweep->add_option("--hi", config.sweep_hi, "largest n");
  sweep->add_option("--realizations", config.realizations, "independent realizations");
  CLI::App* multi = simulate->add_subcommand("multiround", "one multi-round trajectory");
  add_common(multi);
  multi->add_option("--start", config.start, "initial number of people");
  multi->add_option("--max-rounds", config.max_rounds, "round cap");
  CLI::App* coll = simulate->add_subcommand("collision", "collision frequency experiment");
  add_common(coll);
  coll->add_option("--a", config.collision_a, "first start");
  coll->add_option("--b", config.collision_b, "second start");
  coll->add_option("--trials", config.trials, "Monte Carlo trials");

  CLI11_PARSE(app, argc, argv);

  try {
    config.scale = Integer(scale_str);
    if (bounds->parsed()) return cmd_bounds(config, std::cout);
    if (certify->parsed()) return cmd_certify(config, std::cout);
    if (figure->parsed()) return cmd_figure(config, std::cout);
    if (simulate->parsed()) {
      if (sweep->parsed()) return cmd_simulate(config, "round-sweep", std::cout);
      if (multi->parsed()) return cmd_simulate(config, "multiround", std::cout);
      if (coll->parsed()) return cmd_simulate(config, "collision", std::cout);
    }
  } catch (const cache_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io_error;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io_error;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_domain_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_other;
  }
  return exit_other;
}
