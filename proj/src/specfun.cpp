#include "tandem/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tandem/errors.hpp"

namespace tandem::specfun {
namespace {

void check_order(int k) {
  if (k < 1) {
    throw InvalidArgument("gamma order must be >= 1, got " + std::to_string(k));
  }
  if (k > kMaxGammaOrder) {
    throw RangeError("gamma order " + std::to_string(k) + " exceeds " +
                     std::to_string(kMaxGammaOrder) + " (factorial overflows double)");
  }
}

// e^(-x) underflows into subnormals past ~708; switch to log-space terms before that.
constexpr double kDirectSumLimit = 690.0;

}  // namespace

double gamma_int(int k) {
  check_order(k);
  double f = 1.0;
  for (int n = 2; n < k; ++n) f *= n;
  return f;
}

double upper_incomplete_gamma_int(int k, double x) {
  check_order(k);
  if (!(x >= 0.0)) {
    throw InvalidArgument("upper incomplete gamma needs x >= 0");
  }
  if (x == 0.0) return gamma_int(k);
  if (std::isinf(x)) return 0.0;

  if (x < kDirectSumLimit) {
    // Terms e^(-x) x^n / n!, built by recurrence so the exponential is applied term-wise.
    double term = std::exp(-x);
    double sum = term;
    for (int n = 1; n < k; ++n) {
      term *= x / n;
      sum += term;
    }
    // The sum can round a hair above 1 when x is tiny relative to k.
    return gamma_int(k) * std::min(sum, 1.0);
  }

  // Each term (k-1)!/n! x^n e^(-x) in logs.
  const double log_x = std::log(x);
  const double log_fact = std::lgamma(static_cast<double>(k));
  double sum = 0.0;
  for (int n = 0; n < k; ++n) {
    sum += std::exp(log_fact - std::lgamma(n + 1.0) + n * log_x - x);
  }
  return sum;
}

double scaled_upper_incomplete_gamma_int(int k, double x) {
  check_order(k);
  if (!(x >= 0.0)) {
    throw InvalidArgument("scaled upper incomplete gamma needs x >= 0");
  }
  // Horner form of sum_{n<k} (k-1)!/n! x^n, highest power first.
  double acc = 1.0;
  for (int n = k - 1; n >= 1; --n) acc = acc * x / n + 1.0;
  return gamma_int(k) * acc;
}

}  // namespace tandem::specfun
