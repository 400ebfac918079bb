#include "tandem/app/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "tandem/burke.hpp"
#include "tandem/chain.hpp"
#include "tandem/errors.hpp"
#include "tandem/network.hpp"
#include "tandem/optimize.hpp"
#include "tandem/simulator.hpp"
#include "tandem/split.hpp"

namespace tandem::app {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::analyze: return "analyze";
    case Mode::simulate: return "simulate";
    case Mode::sweep: return "sweep";
    case Mode::optimize: return "optimize";
    case Mode::compare: return "compare";
    case Mode::burke: return "burke";
  }
  return "?";
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::chain: return "chain";
    case Scenario::split: return "split";
    case Scenario::multi_ground: return "multi-ground";
  }
  return "?";
}

Scenario parse_scenario(const std::string& s) {
  if (s == "chain") return Scenario::chain;
  if (s == "split") return Scenario::split;
  if (s == "multi-ground") return Scenario::multi_ground;
  throw UsageError("unknown scenario '" + s + "' (expected chain, split or multi-ground)");
}

namespace {

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// Snap grid values to 12 decimals so 0.1 + 2 * 0.1 prints as 0.3.
double snap(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::vector<double> parse_rho_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) throw UsageError("empty rho grid");
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_double(item));
    if (parts.size() != 3) throw UsageError("rho grid range must be start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start) throw UsageError("rho grid needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (n > 100000) throw UsageError("rho grid too large");
    for (long i = 0; i <= n; ++i) out.push_back(snap(start + i * step));
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(parse_double(item));
    }
  }
  if (out.empty()) throw UsageError("empty rho grid");
  return out;
}

bool ExperimentSpec::needs_simulation() const {
  return mode == Mode::simulate || mode == Mode::sweep || mode == Mode::compare ||
         mode == Mode::burke;
}

void ExperimentSpec::validate() const {
  if (rho_grid.empty()) throw UsageError("rho grid is empty");
  for (double r : rho_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw UsageError("rho grid values must be > 0");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) throw UsageError("--mu must be > 0");
  if (scenario != Scenario::split || mode == Mode::burke) {
    if (k_list.empty()) throw UsageError("K list is empty");
    for (int k : k_list) {
      if (k < 1 || k > ChainParams::kMaxHops) throw UsageError("K values must be in [1, 149]");
    }
  }
  if (scenario == Scenario::split && mode != Mode::burke) {
    if (p_list.empty()) throw UsageError("p list is empty");
    for (double p : p_list) {
      if (!(p >= 0.0 && p <= 1.0)) throw UsageError("p values must be in [0, 1]");
    }
  }
  if (mode == Mode::optimize) {
    if (scenario == Scenario::multi_ground) {
      throw UsageError("optimize supports the chain and split scenarios only");
    }
    if (!(tol > 0.0 && tol < 0.1)) throw UsageError("--tol must be in (0, 0.1)");
  }
  if (mode == Mode::burke && scenario != Scenario::chain) {
    throw UsageError("burke runs on the chain scenario");
  }
  if (needs_simulation()) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("--horizon must be > 0");
    const double w = warmup.value_or(0.1 * horizon);
    if (!(w >= 0.0) || !(w < horizon)) throw UsageError("--warmup must be in [0, horizon)");
    if (replications < 1) throw UsageError("--replications must be >= 1");
  }
}

namespace {

struct GridPoint {
  int hops;
  double rho;
  std::optional<double> p;
  int replication;
};

std::vector<GridPoint> build_grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  const int reps = spec.needs_simulation() ? spec.replications : 1;
  if (spec.scenario == Scenario::split) {
    for (double p : spec.p_list)
      for (double rho : spec.rho_grid)
        for (int r = 0; r < reps; ++r) grid.push_back({2, rho, p, r});
  } else {
    for (int k : spec.k_list)
      for (double rho : spec.rho_grid)
        for (int r = 0; r < reps; ++r) grid.push_back({k, rho, std::nullopt, r});
  }
  return grid;
}

NetworkSpec network_for(Scenario s, const GridPoint& g, double mu) {
  const double lambda = g.rho * mu;
  switch (s) {
    case Scenario::chain: return NetworkSpec::chain(g.hops, mu, lambda);
    case Scenario::split: return NetworkSpec::split(mu, lambda, *g.p);
    case Scenario::multi_ground: return NetworkSpec::equal_ground(g.hops, mu, lambda);
  }
  throw UsageError("unknown scenario");
}

// Mean end-to-end time with ground traffic at several nodes: packets from
// node j see the M/M/1 sojourns 1/(mu - lambda_k) of every node k >= j.
double multi_ground_delay(const NetworkSpec& net) {
  const double total = net.total_rate();
  double d = 0.0;
  for (std::size_t j = 0; j < net.size(); ++j) {
    double path = 0.0;
    for (std::size_t k = j; k < net.size(); ++k) {
      path += 1.0 / (net.node(k).service_rate - net.cumulative_rate(k));
    }
    d += net.node(j).ground_rate / total * path;
  }
  return d;
}

void fill_analytic(const ExperimentSpec& spec, const GridPoint& g, Row& row) {
  const double lambda = g.rho * spec.mu;
  switch (spec.scenario) {
    case Scenario::chain: {
      const ChainParams cp(g.hops, spec.mu, lambda);
      row.delay_analytic = chain::network_delay(cp);
      row.aoi_analytic = chain::average_aoi(cp);
      row.ewy_analytic = chain::ewy_bound(cp);
      break;
    }
    case Scenario::split: {
      const SplitParams sp(spec.mu, lambda, *g.p);
      row.delay_analytic = split::network_delay_split(sp);
      row.aoi_analytic = split::aoi_mixture(sp);
      if (*g.p > 0.0) row.ewy_analytic = split::ewy_bound_2(sp);
      break;
    }
    case Scenario::multi_ground:
      row.delay_analytic = multi_ground_delay(NetworkSpec::equal_ground(g.hops, spec.mu, lambda));
      break;
  }
}

void fill_simulated(const ExperimentSpec& spec, const GridPoint& g, Row& row) {
  const NetworkSpec net = network_for(spec.scenario, g, spec.mu);
  sim::SimOptions opt;
  opt.seed = spec.seed + static_cast<std::uint64_t>(g.replication);
  opt.horizon = spec.horizon;
  opt.warmup = spec.warmup;
  row.seed = opt.seed;
  row.horizon = opt.horizon;
  const sim::SimResult r = sim::run(net, opt);
  row.delay_sim = r.delay.mean;
  row.delay_sim_ci95 = r.delay.ci95;
  row.aoi_sim_system = r.aoi_system.mean;
  row.aoi_sim_system_ci95 = r.aoi_system.ci95;
  row.aoi_sim_mixture = r.aoi_mixture.mean;
  row.aoi_sim_mixture_ci95 = r.aoi_mixture.ci95;
  // Split rows report node-1 packets so the column lines up with ewy_bound_2.
  const sim::Estimate& ewy =
      spec.scenario == Scenario::split ? r.sources.front().ewy : r.ewy;
  if (spec.scenario != Scenario::split || r.sources.front().origin == 0) {
    if (!std::isnan(ewy.mean)) {
      row.ewy_sim = ewy.mean;
      row.ewy_sim_ci95 = ewy.ci95;
    }
  }
  row.n_departures = r.n_departures;
}

void fill_compare(const ExperimentSpec& spec, Row& row) {
  if (!row.aoi_analytic) return;
  const bool per_source = spec.scenario == Scenario::split;
  const auto& sim_mean = per_source ? row.aoi_sim_mixture : row.aoi_sim_system;
  const auto& sim_ci = per_source ? row.aoi_sim_mixture_ci95 : row.aoi_sim_system_ci95;
  if (!sim_mean) return;
  row.aoi_rel_gap = (*sim_mean - *row.aoi_analytic) / *sim_mean;
  if (spec.scenario == Scenario::chain) {
    const double ci = sim_ci && !std::isnan(*sim_ci) ? *sim_ci : 0.0;
    row.bound_violation = *row.aoi_analytic > *sim_mean + ci;
  }
}

Row evaluate_point(const ExperimentSpec& spec, const GridPoint& g) {
  Row row;
  row.scenario = to_string(spec.scenario);
  row.hops = g.hops;
  row.mu = spec.mu;
  row.rho = g.rho;
  row.lambda = g.rho * spec.mu;
  row.p = g.p;
  try {
    if (spec.mode != Mode::simulate) fill_analytic(spec, g, row);
    if (spec.needs_simulation()) fill_simulated(spec, g, row);
    if (spec.mode == Mode::compare) fill_compare(spec, row);
  } catch (const UnstableNetwork&) {
    Row bare;
    bare.scenario = row.scenario;
    bare.hops = row.hops;
    bare.mu = row.mu;
    bare.lambda = row.lambda;
    bare.rho = row.rho;
    bare.p = row.p;
    row = bare;
    row.error = "unstable";
  } catch (const NoDataError&) {
    row.error = "no-data";
  }
  return row;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

std::vector<Row> run_optimize(const ExperimentSpec& spec) {
  std::vector<Row> rows;
  auto base = [&](int hops, std::optional<double> p, const opt::OptimizeResult& r) {
    Row row;
    row.scenario = to_string(spec.scenario);
    row.hops = hops;
    row.mu = spec.mu;
    row.rho = r.rho_star;
    row.lambda = r.rho_star * spec.mu;
    row.p = p;
    row.aoi_analytic = r.aoi_star;
    return row;
  };
  if (spec.scenario == Scenario::chain) {
    for (int k : spec.k_list) {
      const auto r = opt::minimize_aoi_chain(k, spec.mu, spec.tol);
      Row row = base(k, std::nullopt, r);
      const ChainParams cp(k, spec.mu, row.lambda);
      row.delay_analytic = chain::network_delay(cp);
      row.ewy_analytic = chain::ewy_bound(cp);
      rows.push_back(row);
    }
  } else {
    for (double p : spec.p_list) {
      const auto r = opt::minimize_aoi_split(spec.mu, p, spec.tol);
      Row row = base(2, p, r);
      const SplitParams sp(spec.mu, row.lambda, p);
      row.delay_analytic = split::network_delay_split(sp);
      if (p > 0.0) row.ewy_analytic = split::ewy_bound_2(sp);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<BurkeRow> run_burke(const ExperimentSpec& spec, int& exit_code) {
  struct Job {
    int hops;
    double rho;
    int rep;
  };
  std::vector<Job> jobs;
  for (int k : spec.k_list)
    for (double rho : spec.rho_grid)
      for (int r = 0; r < spec.replications; ++r) jobs.push_back({k, rho, r});
  for (const auto& j : jobs) {
    if (j.hops < 2) throw UsageError("burke needs K >= 2 (an intermediate node)");
  }
  std::vector<BurkeRow> rows(jobs.size());
  std::vector<int> codes(jobs.size(), 0);
  parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
    const auto& j = jobs[i];
    BurkeRow& row = rows[i];
    row.hops = j.hops;
    row.mu = spec.mu;
    row.rho = j.rho;
    row.lambda = j.rho * spec.mu;
    row.seed = spec.seed + static_cast<std::uint64_t>(j.rep);
    row.horizon = spec.horizon;
    try {
      const auto rep = sim::validate_burke(NetworkSpec::chain(j.hops, spec.mu, row.lambda),
                                           row.seed, spec.horizon, spec.warmup);
      row.node = rep.node + 1;
      row.samples = rep.samples;
      row.mean_interdeparture = rep.mean_interdeparture;
      row.expected_mean = rep.expected_mean;
      row.ks_statistic = rep.ks.statistic;
      row.ks_p_value = rep.ks.p_value;
      row.rejected = rep.rejected;
    } catch (const UnstableNetwork&) {
      codes[i] = 2;
    } catch (const NoDataError&) {
      codes[i] = 3;
    }
  });
  for (int c : codes) exit_code = std::max(exit_code, c);
  return rows;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentOutput out;
  if (spec.mode == Mode::optimize) {
    out.rows = run_optimize(spec);
    return out;
  }
  if (spec.mode == Mode::burke) {
    out.burke_rows = run_burke(spec, out.exit_code);
    return out;
  }
  const auto grid = build_grid(spec);
  out.rows.resize(grid.size());
  const unsigned threads = spec.needs_simulation() ? spec.threads : 1;
  parallel_for(grid.size(), threads,
               [&](std::size_t i) { out.rows[i] = evaluate_point(spec, grid[i]); });
  for (const auto& r : out.rows) {
    if (r.error == "unstable") out.exit_code = std::max(out.exit_code, 2);
    if (r.error == "no-data") out.exit_code = std::max(out.exit_code, 3);
  }
  return out;
}

std::string summarize(const ExperimentSpec& spec, const ExperimentOutput& out) {
  std::ostringstream os;
  char buf[256];
  os << to_string(spec.mode) << " (" << to_string(spec.scenario) << "): ";
  if (spec.mode == Mode::burke) {
    os << out.burke_rows.size() << " run(s)\n";
    for (const auto& r : out.burke_rows) {
      std::snprintf(buf, sizeof buf,
                    "  K=%d rho=%.4g node=%zu n=%zu mean=%.6g (expected %.6g) KS D=%.3g p=%.3g %s\n",
                    r.hops, r.rho, r.node, r.samples, r.mean_interdeparture, r.expected_mean,
                    r.ks_statistic, r.ks_p_value, r.rejected ? "REJECTED" : "not rejected");
      os << buf;
    }
    return os.str();
  }
  os << out.rows.size() << " row(s)";
  std::size_t errors = 0;
  for (const auto& r : out.rows) errors += r.error.empty() ? 0 : 1;
  if (errors > 0) os << ", " << errors << " with errors";
  os << '\n';
  if (spec.mode == Mode::compare) {
    std::size_t violations = 0;
    double max_gap = 0.0;
    for (const auto& r : out.rows) {
      if (r.bound_violation && *r.bound_violation) ++violations;
      if (r.aoi_rel_gap) max_gap = std::max(max_gap, std::abs(*r.aoi_rel_gap));
    }
    std::snprintf(buf, sizeof buf, "  bound violations: %zu, max |relative AoI gap|: %.4f\n",
                  violations, max_gap);
    os << buf;
  }
  if (spec.mode == Mode::optimize) {
    for (const auto& r : out.rows) {
      std::snprintf(buf, sizeof buf, "  K=%d%s rho*=%.4f aoi*=%.6g\n", r.hops,
                    r.p ? (" p=" + std::to_string(*r.p)).c_str() : "", r.rho, *r.aoi_analytic);
      os << buf;
    }
  }
  return os.str();
}

}  // namespace tandem::app
