#pragma once

// Test-only numerical integration used as an independent oracle for the
// closed forms. Adaptive Gauss-Kronrod (7/15) with bisection.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>
#include <algorithm>

namespace oracle {

struct QuadResult {
  double value;
  double error;
};

namespace detail {

constexpr std::array<double, 8> kXk{0.991455371120812639206854697526329,
                                    0.949107912342758524526189684047851,
                                    0.864864423359769072789712788640926,
                                    0.741531185599394439863864773280788,
                                    0.586087235467691130294144845693013,
                                    0.405845151377397166906606412076961,
                                    0.207784955007898467600689403773245,
                                    0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk{0.022935322010529224963732008058970,
                                    0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518,
                                    0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550,
                                    0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649,
                                    0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082,
                                    0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975,
                                    0.417959183673469387755102040816327};

inline QuadResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

// Global adaptive scheme: repeatedly bisect the interval with the largest
// error estimate until the summed estimate meets the tolerance.
inline QuadResult adapt(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_intervals = 4000) {
  struct Piece {
    double a, b;
    QuadResult r;
  };
  std::vector<Piece> pieces{{a, b, gk15(f, a, b)}};
  for (;;) {
    double value = 0.0, error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      value += pieces[i].r.value;
      error += pieces[i].r.error;
      if (pieces[i].r.error > pieces[worst].r.error) worst = i;
    }
    if (error <= std::max(abs_tol, rel_tol * std::abs(value)) ||
        static_cast<int>(pieces.size()) >= max_intervals) {
      return {value, error};
    }
    const Piece p = pieces[worst];
    const double m = 0.5 * (p.a + p.b);
    pieces[worst] = {p.a, m, gk15(f, p.a, m)};
    pieces.push_back({m, p.b, gk15(f, m, p.b)});
  }
}

}  // namespace detail

/// Integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-13) {
  return detail::adapt(f, a, b, abs_tol, 1e-14).value;
}

/// Integral of f over [a, inf) through t = a + scale * x / (1 - x), x in [0, 1).
/// `scale` should be comparable to the decay length of f.
inline double integrate_to_inf(const std::function<double(double)>& f, double a,
                               double scale = 1.0, double abs_tol = 1e-13) {
  auto g = [&](double x) {
    if (x >= 1.0) return 0.0;
    const double one_minus = 1.0 - x;
    const double t = a + scale * x / one_minus;
    const double v = f(t);
    return v == 0.0 ? 0.0 : scale * v / (one_minus * one_minus);
  };
  return detail::adapt(g, 0.0, 1.0, abs_tol, 1e-14).value;
}

}  // namespace oracle
