#pragma once

// Internal numeric helpers shared by the analysis modules.

#include <cmath>
#include <functional>
#include <span>

namespace herdrisk::detail {

/// Kahan-Babuska (Neumaier) compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

inline double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Result of maximizing a function over a closed interval.
struct IntervalMax {
  double value;
  double argmax;
  bool interior;  // true when the best point is strictly inside the interval
};

/// Maximizes f over [lo, hi] by evaluating both endpoints and a uniform grid
/// of `grid_points` points, then refining around an interior incumbent with
/// golden-section search until the bracket is below rel_tol * (hi - lo).
/// f is smooth but may be multimodal, so the grid decides the basin.
IntervalMax maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                 int grid_points, double rel_tol);

}  // namespace herdrisk::detail
