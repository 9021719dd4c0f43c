#include "roulette/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "roulette/bounds.hpp"
#include "roulette/coupling.hpp"
#include "roulette/intervals.hpp"
#include "roulette/parallel.hpp"

namespace roulette {

namespace fs = std::filesystem;

unsigned RunConfig::effective_threads() const {
  return threads == 0 ? default_threads() : threads;
}

std::string RunConfig::cache_path(long n_max) const {
  return (fs::path(cache_dir) / cache_file_name(scale, n_max)).string();
}

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BoundsTable compute_and_cache(const RunConfig& config, long n_max, std::ostream& log) {
  auto t0 = std::chrono::steady_clock::now();
  long last_pct = -1;
  ProgressFn progress = nullptr;
  if (!config.quiet)
    progress = [&](long n, long total) {
      long pct = 100 * n / total;
      if (pct != last_pct && pct % 10 == 0) {
        log << "  n=" << n << "/" << total << " (" << pct << "%)\n" << std::flush;
        last_pct = pct;
      }
    };
  BoundsTable table = run_bounds(n_max, config.scale, config.effective_threads(), progress);
  std::string path = config.cache_path(n_max);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write cache file " + path);
  write_cache(table, out);
  if (!out) throw std::ios_base::failure("error writing cache file " + path);
  log << "bounds: N=" << n_max << " scale=" << config.scale.get_str()
      << " max_gap=" << decimal_string(table.max_gap(), 10, Round::up)
      << " wall=" << seconds_since(t0) << "s cache=" << path << "\n";
  return table;
}

BoundsTable load_or_compute(const RunConfig& config, long n_max, std::ostream& log) {
  std::string path = config.cache_path(n_max);
  if (!config.force_recompute && fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read cache file " + path);
    BoundsTable table = read_cache(in);
    if (table.max_n() >= n_max) {
      log << "bounds: loaded cache " << path << " (N=" << table.max_n() << ")\n";
      return table;
    }
    log << "bounds: cache " << path << " too short (N=" << table.max_n() << ")\n";
  }
  if (config.cache_only)
    throw cache_error("cache insufficient at " + path + " and recompute disabled");
  return compute_and_cache(config, n_max, log);
}

}  // namespace

int cmd_bounds(const RunConfig& config, std::ostream& log) {
  long n_max = config.n > 0 ? config.n : 1200;
  compute_and_cache(config, n_max, log);
  return exit_ok;
}

int cmd_certify(const RunConfig& config, std::ostream& log) {
  long n_max = config.n > 0 ? config.n : 5143;
  if (n_max < 5143)
    throw std::domain_error("certify: needs bounds up to n=5143 (got N=" +
                            std::to_string(n_max) + ")");
  BoundsTable table = load_or_compute(config, n_max, log);
  CertificateReport report = nonconvergence_certificate(table, config.effective_threads());
  report.render(log);
  if (!config.out.empty()) {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write report " + config.out);
    report.write_csv(out);
  }
  return report.ok ? exit_ok : exit_certificate_failed;
}

int cmd_figure(const RunConfig& config, std::ostream& log) {
  long n_max = config.n > 0 ? config.n : 1200;
  std::string path = config.cache_path(n_max);
  if (!fs::exists(path)) throw cache_error("figure: bounds cache absent at " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read cache file " + path);
  BoundsTable table = read_cache(in);
  if (config.out.empty()) {
    write_figure_csv(table, log);
  } else {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write figure " + config.out);
    write_figure_csv(table, out);
    if (!out) throw std::ios_base::failure("error writing figure " + config.out);
    log << "figure: " << (table.max_n() - 1) << " rows -> " << config.out << "\n";
  }
  return exit_ok;
}

int cmd_simulate(const RunConfig& config, const std::string& subcommand, std::ostream& log) {
  unsigned threads = config.effective_threads();
  if (subcommand == "round-sweep") {
    long violations = count_sweep_violations(config.seed, config.realizations,
                                             config.sweep_lo, config.sweep_hi, threads);
    log << "mode=round-sweep\nseed=" << config.seed
        << "\nrealizations=" << config.realizations << "\nn_lo=" << config.sweep_lo
        << "\nn_hi=" << config.sweep_hi << "\nviolations=" << violations << "\nverdict="
        << (violations == 0 ? "PASS" : "FAIL") << "\n";
    return violations == 0 ? exit_ok : exit_other;
  }
  if (subcommand == "multiround") {
    MultiRoundPlan plan(config.seed);
    std::vector<long> traj = simulate_multiround(plan, config.start, config.max_rounds);
    std::ostringstream csv;
    csv << "round,value\n";
    for (size_t i = 0; i < traj.size(); ++i) csv << i << "," << traj[i] << "\n";
    if (config.out.empty()) {
      log << csv.str();
    } else {
      std::ofstream out(config.out, std::ios::binary);
      if (!out) throw std::ios_base::failure("cannot write trajectory " + config.out);
      out << csv.str();
      log << "multiround: " << traj.size() << " rows -> " << config.out << "\n";
    }
    return exit_ok;
  }
  if (subcommand == "collision") {
    CollisionReport rep = collision_experiment(config.collision_a, config.collision_b,
                                               config.trials, config.seed, threads);
    log << "mode=collision\na=" << rep.a << "\nb=" << rep.b << "\ntrials=" << rep.trials
        << "\nsuccesses=" << rep.successes
        << "\nfrequency=" << decimal_string(rep.frequency, 8, Round::down)
        << "\nbound=" << decimal_string(rep.bound_lo, 8, Round::down)
        << "\nthree_sigma=" << decimal_string(rep.three_sigma, 8, Round::up) << "\nverdict="
        << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? exit_ok : exit_other;
  }
  throw std::domain_error("simulate: unknown subcommand " + subcommand);
}

}  // namespace roulette
