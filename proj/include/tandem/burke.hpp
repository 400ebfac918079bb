#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "tandem/network.hpp"

namespace tandem::sim {

/// One-sample Kolmogorov-Smirnov test against Exponential(rate).
struct KsResult {
  std::size_t n = 0;
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;    // asymptotic Kolmogorov distribution
};

KsResult ks_test_exponential(std::span<const double> samples, double rate);

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_survival(double x);

struct BurkeReport {
  std::size_t node = 0;  // 0-based node whose departures were observed
  std::size_t samples = 0;
  double mean_interdeparture = 0.0;
  double expected_mean = 0.0;  // 1 / lambda
  KsResult ks;
  double significance = 0.01;
  bool rejected = false;  // ks.p_value < significance
};

/// Interdeparture times at an intermediate node of a single-source chain,
/// checked against the Poisson output predicted by Burke's theorem.
/// Requires at least two nodes; `node` defaults to the first one and must not
/// be the last. Warmup defaults to 10% of the horizon.
BurkeReport validate_burke(const NetworkSpec& spec, std::uint64_t seed, double horizon,
                           std::optional<double> warmup = std::nullopt, std::size_t node = 0,
                           double significance = 0.01);

}  // namespace tandem::sim
