#include "tandem/chain.hpp"

#include <cmath>
#include <string>

#include "tandem/errors.hpp"
#include "tandem/specfun.hpp"

namespace tandem {

ChainParams::ChainParams(int hops, double mu, double lambda)
    : hops_(hops), mu_(mu), lambda_(lambda) {
  if (hops < 1 || hops > kMaxHops) {
    throw InvalidArgument("chain hop count must be in [1, " + std::to_string(kMaxHops) +
                          "], got " + std::to_string(hops));
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("service rate must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("arrival rate must be > 0");
  }
  if (lambda >= mu) {
    throw UnstableNetwork("chain utilization lambda/mu = " + std::to_string(lambda / mu) +
                          " must be < 1");
  }
}

namespace chain {

using specfun::gamma_int;
using specfun::scaled_upper_incomplete_gamma_int;
using specfun::upper_incomplete_gamma_int;

double sojourn_pdf(const ChainParams& p, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("sojourn_pdf needs t >= 0");
  const int k = p.hops();
  const double a = p.alpha();
  if (t == 0.0) return k == 1 ? a : 0.0;
  return std::exp(k * std::log(a) + (k - 1) * std::log(t) - a * t -
                  std::lgamma(static_cast<double>(k)));
}

double network_delay(const ChainParams& p) { return p.hops() / p.alpha(); }

double conditional_wait(const ChainParams& p, double y, double s) {
  if (!(y >= 0.0) || !(s >= 0.0)) throw InvalidArgument("conditional_wait needs y, s >= 0");
  const int k = p.hops();
  const double a = p.alpha();
  const double x = y + s;
  const double gk = gamma_int(k);
  return upper_incomplete_gamma_int(k + 1, a * x) / (a * gk) -
         x * upper_incomplete_gamma_int(k, a * x) / gk;
}

double ewy_given_service(const ChainParams& p, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("ewy_given_service needs s >= 0");
  const int k = p.hops();
  const double a = p.alpha();
  const double mu = p.mu();
  const double lam = p.lambda();
  const double gk = gamma_int(k);

  const double first = -1.0 / (a * lam * lam * gk) *
                       (a * (lam * s + 2.0) * upper_incomplete_gamma_int(k, a * s) -
                        lam * upper_incomplete_gamma_int(k + 1, a * s));
  // alpha^K mu^-K = (1 - rho)^K. The e^(lambda s) factor is folded into the
  // scaled gammas: e^(lambda s) Gamma(k, mu s) = e^(-alpha s) e^(mu s) Gamma(k, mu s).
  const double scale = std::pow(a / mu, k) * std::exp(-a * s) / (lam * lam * mu * gk);
  const double second =
      -scale * (mu * (lam * s - 2.0) * scaled_upper_incomplete_gamma_int(k, mu * s) -
                lam * scaled_upper_incomplete_gamma_int(k + 1, mu * s));
  return first + second;
}

double ewy_bound(const ChainParams& p) { return ewy_given_service(p, p.s_bar()); }

double average_aoi(const ChainParams& p) {
  const double lam = p.lambda();
  return lam * (ewy_bound(p) + p.hops() / (p.mu() * lam) + 1.0 / (lam * lam));
}

double mm1_average_aoi(double mu, double lambda) {
  const ChainParams checked(1, mu, lambda);
  const double rho = checked.rho();
  return (1.0 + 1.0 / rho + rho * rho / (1.0 - rho)) / mu;
}

}  // namespace chain
}  // namespace tandem
