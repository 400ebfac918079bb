#pragma once

#include <functional>

namespace tandem::opt {

struct OptimizeResult {
  double rho_star = 0.0;
  double aoi_star = 0.0;
  int evaluations = 0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
};

inline constexpr double kRhoMin = 1e-4;
inline constexpr double kRhoMax = 1.0 - 1e-4;
inline constexpr double kScanStep = 0.01;

/// Minimizes f over rho in [kRhoMin, kRhoMax]: a kScanStep grid scan picks
/// the bracket around the best grid point, then golden-section search
/// shrinks it below `tol`. Throws InvalidArgument unless 0 < tol < 0.1.
OptimizeResult minimize_utilization(const std::function<double(double)>& f, double tol);

/// rho* of the chain AoI bound for K hops at service rate mu.
OptimizeResult minimize_aoi_chain(int hops, double mu, double tol = 1e-3);

/// rho* of the split-traffic mixture AoI at fraction p.
OptimizeResult minimize_aoi_split(double mu, double p, double tol = 1e-3);

}  // namespace tandem::opt
