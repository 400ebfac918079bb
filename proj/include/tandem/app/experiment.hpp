#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tandem::app {

enum class Mode { analyze, simulate, sweep, optimize, compare, burke };
enum class Scenario { chain, split, multi_ground };

const char* to_string(Mode m);
const char* to_string(Scenario s);
Scenario parse_scenario(const std::string& s);

/// Bad flags or an invalid grid; maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  Mode mode = Mode::analyze;
  Scenario scenario = Scenario::chain;
  std::vector<int> k_list{1};
  std::vector<double> rho_grid{0.5};
  std::vector<double> p_list{0.0, 0.5, 1.0};
  double mu = 1.0;
  std::uint64_t seed = 1;
  double horizon = 1e6;
  std::optional<double> warmup;  // default 10% of horizon
  int replications = 1;
  double tol = 1e-3;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws UsageError when the spec cannot be run.
  void validate() const;
  bool needs_simulation() const;
};

/// Parses "start:stop:step" (stop inclusive) or a comma-separated list.
std::vector<double> parse_rho_grid(const std::string& text);

/// One output row. Empty optionals become empty CSV fields.
struct Row {
  std::string scenario;
  int hops = 0;
  double mu = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::optional<double> delay_analytic;
  std::optional<double> aoi_analytic;
  std::optional<double> delay_sim;
  std::optional<double> delay_sim_ci95;
  std::optional<double> aoi_sim_system;
  std::optional<double> aoi_sim_system_ci95;
  std::optional<double> aoi_sim_mixture;
  std::optional<double> aoi_sim_mixture_ci95;
  std::optional<double> ewy_analytic;
  std::optional<double> ewy_sim;
  std::optional<double> ewy_sim_ci95;
  std::optional<std::uint64_t> n_departures;
  /// "unstable" or "no-data"; written in place of n_departures.
  std::string error;

  // compare mode only
  std::optional<double> aoi_rel_gap;
  std::optional<bool> bound_violation;
};

struct BurkeRow {
  int hops = 0;
  double mu = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::size_t node = 0;  // 1-based in the output
  std::size_t samples = 0;
  double mean_interdeparture = 0.0;
  double expected_mean = 0.0;
  double ks_statistic = 0.0;
  double ks_p_value = 0.0;
  bool rejected = false;
};

struct ExperimentOutput {
  std::vector<Row> rows;
  std::vector<BurkeRow> burke_rows;
  int exit_code = 0;  // 0 ok, 2 unstable point, 3 simulation without data
};

/// Runs every grid point (in parallel for simulation modes) and returns the
/// rows in grid order.
ExperimentOutput run_experiment(const ExperimentSpec& spec);

/// Human-readable summary of an experiment's rows.
std::string summarize(const ExperimentSpec& spec, const ExperimentOutput& out);

}  // namespace tandem::app
