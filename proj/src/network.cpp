#include "tandem/network.hpp"

#include <cmath>
#include <string>

#include "tandem/errors.hpp"

namespace tandem {

NetworkSpec::NetworkSpec(std::vector<NodeConfig> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvalidArgument("network needs at least one node");
  bool any_ground = false;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const auto& n = nodes_[k];
    if (!(n.service_rate > 0.0) || !std::isfinite(n.service_rate)) {
      throw InvalidArgument("node " + std::to_string(k + 1) + ": service rate must be > 0");
    }
    if (!(n.ground_rate >= 0.0) || !std::isfinite(n.ground_rate)) {
      throw InvalidArgument("node " + std::to_string(k + 1) + ": ground rate must be >= 0");
    }
    any_ground = any_ground || n.ground_rate > 0.0;
    cumulative += n.ground_rate;
    if (cumulative >= n.service_rate) {
      throw UnstableNetwork("node " + std::to_string(k + 1) + " is unstable: arrival rate " +
                            std::to_string(cumulative) + " >= service rate " +
                            std::to_string(n.service_rate));
    }
  }
  if (!any_ground) throw InvalidArgument("network has no ground traffic");
}

NetworkSpec NetworkSpec::chain(int hops, double mu, double lambda) {
  if (hops < 1) throw InvalidArgument("hop count must be >= 1");
  std::vector<NodeConfig> nodes(static_cast<std::size_t>(hops), NodeConfig{mu, 0.0});
  nodes.front().ground_rate = lambda;
  return NetworkSpec(std::move(nodes));
}

NetworkSpec NetworkSpec::split(double mu, double lambda, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("split fraction p must be in [0, 1]");
  return NetworkSpec({{mu, p * lambda}, {mu, (1.0 - p) * lambda}});
}

NetworkSpec NetworkSpec::equal_ground(int hops, double mu, double lambda) {
  if (hops < 1) throw InvalidArgument("hop count must be >= 1");
  return NetworkSpec(std::vector<NodeConfig>(static_cast<std::size_t>(hops),
                                             NodeConfig{mu, lambda / hops}));
}

double NetworkSpec::cumulative_rate(std::size_t k) const {
  double sum = 0.0;
  for (std::size_t j = 0; j <= k; ++j) sum += nodes_[j].ground_rate;
  return sum;
}

bool NetworkSpec::single_source() const {
  if (nodes_.front().ground_rate <= 0.0) return false;
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    if (nodes_[k].ground_rate > 0.0) return false;
  }
  return true;
}

}  // namespace tandem
