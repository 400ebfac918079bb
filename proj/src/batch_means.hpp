#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "tandem/simulator.hpp"

namespace tandem::sim::detail {

inline double t_quantile_975(int dof) {
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, 0.975);
}

// Half-width of a 95% interval from per-batch means.
inline double batch_half_width(const std::vector<double>& means) {
  const int n = static_cast<int>(means.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (double v : means) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : means) ss += (v - m) * (v - m);
  return t_quantile_975(n - 1) * std::sqrt(ss / (n - 1) / n);
}

// Per-batch sums and counts of a per-packet quantity.
class BatchedMean {
 public:
  explicit BatchedMean(int batches = 20) : sum_(batches, 0.0), count_(batches, 0) {}

  void add(int batch, double value) {
    sum_[batch] += value;
    ++count_[batch];
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto n : count_) c += n;
    return c;
  }

  Estimate estimate() const {
    double total = 0.0;
    std::vector<double> means;
    for (std::size_t b = 0; b < sum_.size(); ++b) {
      total += sum_[b];
      if (count_[b] > 0) means.push_back(sum_[b] / count_[b]);
    }
    const auto n = count();
    return {n > 0 ? total / n : std::numeric_limits<double>::quiet_NaN(),
            batch_half_width(means)};
  }

 private:
  std::vector<double> sum_;
  std::vector<std::uint64_t> count_;
};

}  // namespace tandem::sim::detail
