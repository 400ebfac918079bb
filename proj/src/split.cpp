#include "tandem/split.hpp"

#include <cmath>

#include "tandem/errors.hpp"

namespace tandem {

SplitParams::SplitParams(double mu, double lambda, double p) : mu_(mu), lambda_(lambda), p_(p) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("service rate must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("arrival rate must be > 0");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("split fraction p must be in [0, 1]");
  if (lambda >= mu) throw UnstableNetwork("bottleneck utilization lambda/mu must be < 1");
}

namespace split {
namespace {

bool degenerate(const SplitParams& p) { return p.rate_gap() < kDegenerateGap * p.mu(); }

// With psi(a, b) = a^2 e^(-b s) / (b + lambda)^2 the closed form reads
// lambda / (a1 a2 gap) * [psi(a1, a2) - psi(a2, a1)].
// Limit of [psi(a1, a2) - psi(a2, a1)] / (a1 - a2) at a1 = a2 = a.
double psi_gap_derivative(double a, double s, double lam) {
  const double d = a + lam;
  return std::exp(-a * s) / (d * d) * (2.0 * a + a * a * (s + 2.0 / d));
}

}  // namespace

double hypoexp_pdf(const SplitParams& p, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("hypoexp_pdf needs t >= 0");
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  if (degenerate(p)) return a2 * a2 * t * std::exp(-a2 * t);
  // (e^(-a2 t) - e^(-a1 t)) / (a1 - a2) = e^(-a2 t) (1 - e^(-gap t)) / gap
  const double gap = p.rate_gap();
  return a1 * a2 * std::exp(-a2 * t) * (-std::expm1(-gap * t)) / gap;
}

double aoi_node2(const SplitParams& p) {
  const double mu = p.mu();
  const double lam = p.lambda();
  const double rho = p.rho2();
  return lam * (rho / (mu * mu * (1.0 - rho)) + 1.0 / (mu * lam) + 1.0 / (lam * lam));
}

double conditional_wait_2(const SplitParams& p, double y, double s) {
  if (!(y >= 0.0) || !(s >= 0.0)) throw InvalidArgument("conditional_wait_2 needs y, s >= 0");
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  const double x = y + s;
  if (degenerate(p)) return std::exp(-a2 * x) * (2.0 / a2 + x);
  // a1 e^(-a2 x)/(a2 gap) - a2 e^(-a1 x)/(a1 gap), regrouped so the 1/gap
  // factor multiplies (1 - e^(-gap x)) instead of a difference of exponentials.
  const double gap = p.rate_gap();
  return std::exp(-a2 * x) * ((a1 + a2) + a2 * a2 * (-std::expm1(-gap * x)) / gap) / (a1 * a2);
}

double ewy_given_service_2(const SplitParams& p, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("ewy_given_service_2 needs s >= 0");
  const double lam = p.lambda();
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  const double gap = p.rate_gap();
  // At gap = 0 the midpoint expansion is exactly the Erlang-2 value, so the
  // degenerate case shares this branch.
  if (gap < kSeriesGap * p.mu()) {
    const double mid = 0.5 * (a1 + a2);
    return lam / (a1 * a2) * psi_gap_derivative(mid, s, lam);
  }
  return a1 * lam * std::exp(-a2 * s) / (a2 * gap * (a2 + lam) * (a2 + lam)) -
         a2 * lam * std::exp(-a1 * s) / (a1 * gap * (a1 + lam) * (a1 + lam));
}

double ewy_bound_2(const SplitParams& p) { return ewy_given_service_2(p, p.s_bar()); }

double aoi_node1(const SplitParams& p) {
  const double lam = p.lambda();
  return lam * (ewy_bound_2(p) + 2.0 / (p.mu() * lam) + 1.0 / (lam * lam));
}

double aoi_mixture(const SplitParams& p) {
  if (p.p() == 0.0) return aoi_node2(p);
  if (p.p() == 1.0) return aoi_node1(p);
  return p.p() * aoi_node1(p) + (1.0 - p.p()) * aoi_node2(p);
}

double network_delay_split(const SplitParams& p) {
  return p.p() * (1.0 / p.alpha1() + 1.0 / p.alpha2()) + (1.0 - p.p()) / p.alpha2();
}

}  // namespace split
}  // namespace tandem
