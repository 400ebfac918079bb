#pragma once

namespace tandem::specfun {

// Largest order accepted by the integer-order gamma routines; 150! overflows a double.
inline constexpr int kMaxGammaOrder = 150;

// Gamma(k) = (k-1)! for integer k in [1, kMaxGammaOrder].
// Throws InvalidArgument for k < 1 and RangeError above kMaxGammaOrder.
double gamma_int(int k);

// Upper incomplete gamma Gamma(k, x) = integral_x^inf t^(k-1) e^(-t) dt for
// integer k, evaluated through the finite sum
//   Gamma(k, x) = (k-1)! e^(-x) sum_{n<k} x^n / n!.
// Same domain rules as gamma_int; x must be non-negative.
double upper_incomplete_gamma_int(int k, double x);

// e^x Gamma(k, x) = (k-1)! sum_{n<k} x^n / n!, free of the e^(-x) underflow.
double scaled_upper_incomplete_gamma_int(int k, double x);

}  // namespace tandem::specfun
