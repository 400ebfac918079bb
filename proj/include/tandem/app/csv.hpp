#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tandem/app/experiment.hpp"

namespace tandem::app {

/// Fixed column order of the results table.
inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "scenario",        "K",
      "mu",              "lambda",
      "rho",             "p",
      "seed",            "horizon",
      "delay_analytic",  "aoi_analytic",
      "delay_sim",       "delay_sim_ci95",
      "aoi_sim_system",  "aoi_sim_system_ci95",
      "aoi_sim_mixture", "aoi_sim_mixture_ci95",
      "ewy_analytic",    "ewy_sim",
      "ewy_sim_ci95",    "n_departures"};
  return cols;
}

/// Columns appended by `compare`.
inline const std::vector<std::string>& compare_columns() {
  static const std::vector<std::string> cols{"aoi_rel_gap", "bound_violation"};
  return cols;
}

/// Shortest decimal that round-trips to the same double; locale independent.
std::string format_number(double v);

void write_rows(std::ostream& os, const std::vector<Row>& rows, bool with_compare_columns);
void write_burke_rows(std::ostream& os, const std::vector<BurkeRow>& rows);

}  // namespace tandem::app
