#include "tandem/app/csv.hpp"

#include <charconv>
#include <cmath>

namespace tandem::app {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void field(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << format_number(*v);
}

void field(std::ostream& os, const std::optional<std::uint64_t>& v) {
  os << ',';
  if (v) os << *v;
}

void header(std::ostream& os, const std::vector<std::string>& cols, bool first) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0 || !first) os << ',';
    os << cols[i];
  }
}

}  // namespace

void write_rows(std::ostream& os, const std::vector<Row>& rows, bool with_compare_columns) {
  header(os, csv_columns(), true);
  if (with_compare_columns) header(os, compare_columns(), false);
  os << '\n';
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.hops << ',' << format_number(r.mu) << ','
       << format_number(r.lambda) << ',' << format_number(r.rho);
    field(os, r.p);
    field(os, r.seed);
    field(os, r.horizon);
    field(os, r.delay_analytic);
    field(os, r.aoi_analytic);
    field(os, r.delay_sim);
    field(os, r.delay_sim_ci95);
    field(os, r.aoi_sim_system);
    field(os, r.aoi_sim_system_ci95);
    field(os, r.aoi_sim_mixture);
    field(os, r.aoi_sim_mixture_ci95);
    field(os, r.ewy_analytic);
    field(os, r.ewy_sim);
    field(os, r.ewy_sim_ci95);
    if (!r.error.empty()) {
      os << ',' << r.error;
    } else {
      field(os, r.n_departures);
    }
    if (with_compare_columns) {
      field(os, r.aoi_rel_gap);
      os << ',';
      if (r.bound_violation) os << (*r.bound_violation ? 1 : 0);
    }
    os << '\n';
  }
}

void write_burke_rows(std::ostream& os, const std::vector<BurkeRow>& rows) {
  os << "K,mu,lambda,rho,seed,horizon,node,samples,mean_interdeparture,expected_mean,"
        "ks_statistic,ks_p_value,rejected_1pct\n";
  for (const auto& r : rows) {
    os << r.hops << ',' << format_number(r.mu) << ',' << format_number(r.lambda) << ','
       << format_number(r.rho) << ',' << r.seed << ',' << format_number(r.horizon) << ','
       << r.node << ',' << r.samples << ',' << format_number(r.mean_interdeparture) << ','
       << format_number(r.expected_mean) << ',' << format_number(r.ks_statistic) << ','
       << format_number(r.ks_p_value) << ',' << (r.rejected ? 1 : 0) << '\n';
  }
}

}  // namespace tandem::app
