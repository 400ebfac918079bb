#pragma once

#include <cstddef>
#include <vector>

namespace tandem {

struct NodeConfig {
  double service_rate = 1.0;  // mu_k
  double ground_rate = 0.0;   // g_k, aggregate of all ground devices under node k
};

/// Ordered chain of FCFS nodes; node k forwards to node k+1 and the last node
/// delivers. Construction validates rates and per-node stability.
class NetworkSpec {
 public:
  /// Throws InvalidArgument on an empty list, non-positive service rates,
  /// negative ground rates or no ground traffic at all, and UnstableNetwork
  /// when some node's cumulative arrival rate reaches its service rate.
  explicit NetworkSpec(std::vector<NodeConfig> nodes);

  /// Ground traffic only at node 1.
  static NetworkSpec chain(int hops, double mu, double lambda);
  /// Two nodes, fraction p of lambda at node 1 and 1 - p at node 2.
  static NetworkSpec split(double mu, double lambda, double p);
  /// K nodes, each with ground rate lambda / K.
  static NetworkSpec equal_ground(int hops, double mu, double lambda);

  std::size_t size() const { return nodes_.size(); }
  const NodeConfig& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<NodeConfig>& nodes() const { return nodes_; }

  /// lambda_k = sum of ground rates of nodes 0..k.
  double cumulative_rate(std::size_t k) const;
  double total_rate() const { return cumulative_rate(size() - 1); }
  double utilization(std::size_t k) const { return cumulative_rate(k) / nodes_[k].service_rate; }
  /// True when only the first node receives ground traffic.
  bool single_source() const;

 private:
  std::vector<NodeConfig> nodes_;
};

}  // namespace tandem
