#pragma once

// Quadrature oracles for the waiting-time expectations, built from the
// Erlang and hypoexponential densities written out directly (no library code).

#include <cmath>

#include "oracle/quadrature.hpp"

namespace oracle {

inline double erlang_density(int k, double rate, double t) {
  if (t < 0.0) return 0.0;
  double f = rate;
  for (int n = 1; n < k; ++n) f *= rate * t / n;
  return f * std::exp(-rate * t);
}

inline double hypoexp_density(double a1, double a2, double t) {
  return a1 * a2 / (a1 - a2) * (std::exp(-a2 * t) - std::exp(-a1 * t));
}

/// E[(T - x)^+] = integral_x^inf (t - x) f(t) dt.
template <class Density>
double excess_mean(Density&& f, double x, double scale, double tol = 1e-13) {
  return integrate_to_inf([&](double t) { return (t - x) * f(t); }, x, scale, tol);
}

/// E[W Y | S = s] = integral_0^inf y E[(T - y - s)^+] lambda e^(-lambda y) dy.
template <class Density>
double ewy_given_s(Density&& f, double lambda, double s, double scale, double tol = 1e-12) {
  return integrate_to_inf(
      [&](double y) {
        return y * excess_mean(f, y + s, scale, tol * 1e-1) * lambda * std::exp(-lambda * y);
      },
      0.0, 1.0 / lambda, tol);
}

}  // namespace oracle
