#include "tandem/app/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "tandem/app/csv.hpp"
#include "tandem/app/experiment.hpp"

namespace tandem::app {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Age-of-Information and delay analysis of tandem M/M/1 relay chains",
               "tandem-aoi"};
  app.set_config("--config", "", "Key-value config file; names mirror the long flags");
  app.require_subcommand(1);

  std::string scenario = "chain";
  std::vector<int> k_list{1};
  std::string rho_grid = "0.5";
  std::vector<double> p_list{0.0, 0.5, 1.0};
  ExperimentSpec spec;
  double warmup = -1.0;
  std::string out_path;

  app.add_option("--scenario", scenario, "chain | split | multi-ground")
      ->check(CLI::IsMember({"chain", "split", "multi-ground"}));
  app.add_option("--k-list", k_list, "Comma-separated hop counts")->delimiter(',');
  app.add_option("--rho-grid", rho_grid, "start:stop:step (inclusive) or comma list");
  app.add_option("--p-list", p_list, "Comma-separated node-1 load fractions (split)")
      ->delimiter(',');
  app.add_option("--mu", spec.mu, "Service rate of every node");
  app.add_option("--seed", spec.seed, "Master RNG seed");
  app.add_option("--horizon", spec.horizon, "Simulated time per run");
  app.add_option("--warmup", warmup, "Discarded initial time (default 10% of horizon)");
  app.add_option("--replications", spec.replications, "Independent runs per grid point");
  app.add_option("--tol", spec.tol, "Absolute rho tolerance for optimize");
  app.add_option("--threads", spec.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");

  const std::pair<const char*, Mode> commands[] = {
      {"analyze", Mode::analyze},   {"simulate", Mode::simulate}, {"sweep", Mode::sweep},
      {"optimize", Mode::optimize}, {"compare", Mode::compare},   {"burke", Mode::burke}};
  const char* help[] = {"Closed-form delay and AoI per grid point",
                        "Simulated delay and AoI per grid point",
                        "Closed-form and simulated columns per grid point",
                        "AoI-minimizing utilization per K (chain) or p (split)",
                        "Sweep plus relative gap and bound-violation flags",
                        "Interdeparture test at node 1 of a single-source chain"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->fallthrough();
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) spec.mode = commands[i].second;
  }

  ExperimentOutput result;
  try {
    spec.scenario = parse_scenario(scenario);
    spec.k_list = k_list;
    spec.rho_grid = parse_rho_grid(rho_grid);
    spec.p_list = p_list;
    if (warmup >= 0.0) spec.warmup = warmup;
    result = run_experiment(spec);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ostringstream csv;
  if (spec.mode == Mode::burke) {
    write_burke_rows(csv, result.burke_rows);
  } else {
    write_rows(csv, result.rows, spec.mode == Mode::compare);
  }
  const std::string summary = summarize(spec, result);
  if (out_path.empty()) {
    out << csv.str();
    err << summary;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << out_path << " for writing\n";
      return kUsage;
    }
    file << csv.str();
    out << summary;
  }
  return result.exit_code;
}

}  // namespace tandem::app
