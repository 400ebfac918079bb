#include "tandem/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tandem/chain.hpp"
#include "tandem/errors.hpp"
#include "tandem/split.hpp"

namespace tandem::opt {

OptimizeResult minimize_utilization(const std::function<double(double)>& f, double tol) {
  if (!(tol > 0.0 && tol < 0.1)) throw InvalidArgument("tolerance must be in (0, 0.1)");

  OptimizeResult r;
  std::vector<double> grid{kRhoMin};
  for (int i = 1; i * kScanStep < kRhoMax; ++i) grid.push_back(i * kScanStep);
  grid.push_back(kRhoMax);

  std::size_t best = 0;
  double best_val = f(grid[0]);
  ++r.evaluations;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    ++r.evaluations;
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  double lo = grid[best == 0 ? 0 : best - 1];
  double hi = grid[std::min(best + 1, grid.size() - 1)];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  r.evaluations += 2;
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++r.evaluations;
  }

  if (fc < fd) {
    r.rho_star = c;
    r.aoi_star = fc;
  } else {
    r.rho_star = d;
    r.aoi_star = fd;
  }
  r.lo = lo;
  r.hi = hi;
  return r;
}

OptimizeResult minimize_aoi_chain(int hops, double mu, double tol) {
  // Validates hops and mu up front.
  [[maybe_unused]] const ChainParams check(hops, mu, 0.5 * mu);
  return minimize_utilization(
      [&](double rho) { return chain::average_aoi(ChainParams(hops, mu, rho * mu)); }, tol);
}

OptimizeResult minimize_aoi_split(double mu, double p, double tol) {
  [[maybe_unused]] const SplitParams check(mu, 0.5 * mu, p);
  return minimize_utilization(
      [&](double rho) { return split::aoi_mixture(SplitParams(mu, rho * mu, p)); }, tol);
}

}  // namespace tandem::opt
