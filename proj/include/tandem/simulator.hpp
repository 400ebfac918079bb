#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tandem/network.hpp"

namespace tandem::sim {

struct SimOptions {
  std::uint64_t seed = 1;
  double horizon = 1e6;
  /// Statistics ignore [0, warmup). Defaults to 10% of the horizon.
  std::optional<double> warmup;
  /// Batches for the batch-means confidence intervals.
  int batches = 20;
  /// Keep full per-hop timestamps for the first N generated packets.
  std::size_t trace_packets = 0;
  /// Collect departure gaps at this node (0-based) after warmup.
  std::optional<std::size_t> interdeparture_node;

  double effective_warmup() const { return warmup.value_or(0.1 * horizon); }
};

struct HopTimes {
  double arrival = 0.0;
  double service_start = 0.0;
  double departure = 0.0;
};

/// Lifecycle of one delivered packet. Times are absolute simulation times.
struct PacketRecord {
  std::uint64_t id = 0;
  std::size_t origin = 0;  // 0-based node index of the ground node
  double t_gen = 0.0;
  std::vector<HopTimes> hops;
  /// Gap to the previous packet of the same origin; NaN for the first one.
  double interarrival = 0.0;
  /// Gap to the previous delivery at the destination; NaN for the first one.
  double interdeparture = 0.0;

  double network_time() const { return hops.back().departure - t_gen; }
  double waiting_time() const;
  double service_time() const;
};

/// Sample mean with 95% batch-means half-width (NaN when fewer than two
/// batches carry data).
struct Estimate {
  double mean = 0.0;
  double ci95 = 0.0;
};

struct SourceStats {
  std::size_t origin = 0;
  std::uint64_t departures = 0;
  Estimate aoi;
  Estimate delay;
  Estimate ewy;
};

struct NodeStats {
  double utilization = 0.0;
  /// Time-average number of packets at the node (queue plus server).
  double mean_in_system = 0.0;
  /// Mean arrival-to-departure time at this node.
  double mean_sojourn = 0.0;
  std::uint64_t departures = 0;
};

struct SimResult {
  /// Age t - u(t) where u is the newest generation time delivered from any origin.
  Estimate aoi_system;
  /// Departure-weighted combination of the per-source ages.
  Estimate aoi_mixture;
  std::vector<SourceStats> sources;  // one per node with ground traffic, in node order
  Estimate delay;
  Estimate wait;
  /// Sample mean of W_i * Y_i over delivered packets with a predecessor.
  Estimate ewy;
  std::vector<NodeStats> nodes;
  std::uint64_t n_departures = 0;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  double warmup = 0.0;

  std::vector<PacketRecord> trace;
  std::vector<double> interdepartures;

  std::vector<double> aoi_per_source() const;
  std::vector<double> utilization_per_node() const;
};

/// Seed of the RNG stream `stream` derived from the master seed (splitmix64
/// of master + (stream + 1) * golden-ratio constant). Stream 2k drives node
/// k's ground arrivals, stream 2k+1 its service times.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

/// Event-driven run of the tandem network. Identical arguments give
/// bit-identical results. Throws InvalidArgument for a bad horizon/warmup and
/// NoDataError when nothing is delivered after warmup.
SimResult run(const NetworkSpec& spec, const SimOptions& options);
SimResult run(const NetworkSpec& spec, std::uint64_t seed, double horizon, double warmup);

/// E[W Y] estimate on a single-source chain.
Estimate estimate_ewy(const NetworkSpec& spec, std::uint64_t seed, double horizon,
                      std::optional<double> warmup = std::nullopt);

}  // namespace tandem::sim
