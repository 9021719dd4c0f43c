#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "roulette/bigint.hpp"

namespace roulette {

// Exit codes: certificate failure, domain errors and I/O errors are
// distinguishable for scripting.
enum ExitCode : int {
  exit_ok = 0,
  exit_other = 1,
  exit_certificate_failed = 2,
  exit_domain_error = 3,
  exit_io_error = 4,
};

struct RunConfig {
  long n = 0;  // 0 picks the per-command default (bounds/figure 1200, certify 5143)
  Integer scale = Integer("10000000000");
  int precision_digits = 20;
  uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string out;       // output file; empty = stdout where sensible
  std::string cache_dir = ".";
  bool force_recompute = false;
  bool cache_only = false;  // refuse to recompute a missing/short cache
  bool quiet = false;

  // simulate settings
  long sweep_lo = 2, sweep_hi = 200;
  long realizations = 10000;
  long start = 100;
  long max_rounds = 64;
  long collision_a = 40, collision_b = 41;
  long trials = 100000;

  unsigned effective_threads() const;
  std::string cache_path(long n_max) const;
};

int cmd_bounds(const RunConfig& config, std::ostream& log);
int cmd_certify(const RunConfig& config, std::ostream& log);
int cmd_figure(const RunConfig& config, std::ostream& log);
// subcommand: "round-sweep", "multiround" or "collision"
int cmd_simulate(const RunConfig& config, const std::string& subcommand, std::ostream& log);

}  // namespace roulette
