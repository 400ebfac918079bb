#include "tandem/burke.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tandem/errors.hpp"
#include "tandem/simulator.hpp"

namespace tandem::sim {

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // series converges slowly there and the value is 1 to double precision
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test_exponential(std::span<const double> samples, double rate) {
  if (samples.empty()) throw NoDataError("KS test on an empty sample");
  if (!(rate > 0.0)) throw InvalidArgument("exponential rate must be > 0");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = -std::expm1(-rate * x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double sq = std::sqrt(n);
  // Stephens' finite-sample correction to the asymptotic statistic.
  const double p = kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d);
  return {x.size(), d, p};
}

BurkeReport validate_burke(const NetworkSpec& spec, std::uint64_t seed, double horizon,
                           std::optional<double> warmup, std::size_t node, double significance) {
  if (spec.size() < 2) {
    throw InvalidArgument("Burke check needs an intermediate node (K >= 2)");
  }
  if (!spec.single_source()) {
    throw InvalidArgument("Burke check needs ground traffic at node 1 only");
  }
  if (node + 1 >= spec.size()) {
    throw InvalidArgument("observed node must be an intermediate node");
  }
  SimOptions opt;
  opt.seed = seed;
  opt.horizon = horizon;
  opt.warmup = warmup;
  opt.interdeparture_node = node;
  const SimResult r = run(spec, opt);
  if (r.interdepartures.empty()) throw NoDataError("no interdeparture samples collected");

  BurkeReport rep;
  rep.node = node;
  rep.samples = r.interdepartures.size();
  double sum = 0.0;
  for (double z : r.interdepartures) sum += z;
  rep.mean_interdeparture = sum / static_cast<double>(rep.samples);
  const double lambda = spec.total_rate();
  rep.expected_mean = 1.0 / lambda;
  rep.ks = ks_test_exponential(r.interdepartures, lambda);
  rep.significance = significance;
  rep.rejected = rep.ks.p_value < significance;
  return rep;
}

}  // namespace tandem::sim
