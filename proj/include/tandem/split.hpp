#pragma once

namespace tandem {

/// Two-node network where both nodes receive ground traffic: a fraction p of
/// the total rate lambda enters node 1, the rest enters node 2. Node 2 is the
/// bottleneck and carries the whole stream.
class SplitParams {
 public:
  /// Throws InvalidArgument for p outside [0, 1] or non-positive rates and
  /// UnstableNetwork when lambda >= mu.
  SplitParams(double mu, double lambda, double p);

  double mu() const { return mu_; }
  double lambda() const { return lambda_; }
  double p() const { return p_; }
  double lambda1() const { return p_ * lambda_; }
  double lambda2() const { return (1.0 - p_) * lambda_; }
  double rho1() const { return lambda1() / mu_; }
  double rho2() const { return lambda_ / mu_; }
  double alpha1() const { return mu_ - lambda1(); }
  double alpha2() const { return mu_ - lambda_; }
  /// alpha1 - alpha2 = (1 - p) lambda, computed without cancellation.
  double rate_gap() const { return lambda2(); }
  /// Mean service time at node 1.
  double s_bar() const { return 1.0 / mu_; }

 private:
  double mu_;
  double lambda_;
  double p_;
};

namespace split {

/// Below this gap (relative to mu) the two stage rates are treated as equal
/// and the Erlang-2 forms are used.
inline constexpr double kDegenerateGap = 1e-9;
/// Below this gap ewy_bound_2 switches to its first-order expansion.
inline constexpr double kSeriesGap = 1e-6;

/// Hypoexponential(alpha1, alpha2) density of a node-1 packet's network time.
double hypoexp_pdf(const SplitParams& p, double t);

/// Average AoI of the node-2 stream, an M/M/1 queue at the total rate.
double aoi_node2(const SplitParams& p);

/// E[(T - y - s)^+] under the hypoexponential network time.
double conditional_wait_2(const SplitParams& p, double y, double s);

/// E[W Y | S1 = s] with Y ~ Exponential(lambda), closed form.
double ewy_given_service_2(const SplitParams& p, double s);

/// Lower bound on E[W Y] for node-1 packets (s = 1/mu).
double ewy_bound_2(const SplitParams& p);

/// Average AoI of node-1 packets.
double aoi_node1(const SplitParams& p);

/// Departure-weighted mixture p * aoi_node1 + (1 - p) * aoi_node2.
double aoi_mixture(const SplitParams& p);

/// Mean network delay p (1/alpha1 + 1/alpha2) + (1 - p)/alpha2.
double network_delay_split(const SplitParams& p);

}  // namespace split
}  // namespace tandem
