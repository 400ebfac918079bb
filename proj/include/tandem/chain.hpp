#pragma once

namespace tandem {

/// Homogeneous K-node tandem of M/M/1 stages with all external traffic
/// entering at node 1. Every node serves at rate `mu`; under stability each
/// stage sojourn is Exponential(alpha) and the end-to-end network time is
/// Erlang(K, alpha).
class ChainParams {
 public:
  /// Throws InvalidArgument on K < 1, K > 149, non-positive or non-finite
  /// rates, and UnstableNetwork when lambda >= mu.
  ChainParams(int hops, double mu, double lambda);

  int hops() const { return hops_; }
  double mu() const { return mu_; }
  double lambda() const { return lambda_; }
  double rho() const { return lambda_ / mu_; }
  /// Stage sojourn rate mu (1 - rho).
  double alpha() const { return mu_ - lambda_; }
  /// Mean service time of the first K-1 hops, (K-1)/mu.
  double s_bar() const { return (hops_ - 1) / mu_; }

  /// Largest K for which Gamma(K+1, .) stays in the supported range.
  static constexpr int kMaxHops = 149;

 private:
  int hops_;
  double mu_;
  double lambda_;
};

namespace chain {

/// Erlang(K, alpha) density of the network time at t >= 0.
double sojourn_pdf(const ChainParams& p, double t);

/// Mean network time K / alpha.
double network_delay(const ChainParams& p);

/// E[(T - y - s)^+] for T ~ Erlang(K, alpha), written with upper incomplete
/// gamma functions. Requires y, s >= 0.
double conditional_wait(const ChainParams& p, double y, double s);

/// E[W Y | S = s] for Y ~ Exponential(lambda): the conditional wait
/// integrated against y lambda e^(-lambda y), in closed form.
double ewy_given_service(const ChainParams& p, double s);

/// Lower bound on E[W Y]: ewy_given_service evaluated at s = s_bar. Exact
/// for K = 1 where there is no upstream service to average over.
double ewy_bound(const ChainParams& p);

/// Average-AoI lower bound lambda (E[WY] + K/(mu lambda) + 1/lambda^2).
double average_aoi(const ChainParams& p);

/// Exact M/M/1 average AoI (1/mu)(1 + 1/rho + rho^2/(1-rho)).
double mm1_average_aoi(double mu, double lambda);

}  // namespace chain
}  // namespace tandem
