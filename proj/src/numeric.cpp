#include "numeric.hpp"

#include <algorithm>
#include <vector>

namespace herdrisk::detail {

IntervalMax maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                 int grid_points, double rel_tol) {
  if (!(hi > lo)) {
    const double v = f(lo);
    return {v, lo, false};
  }
  const int points = std::max(grid_points, 2);
  const double step = (hi - lo) / (points - 1);

  std::vector<double> xs(points);
  std::vector<double> ys(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = (i == points - 1) ? hi : lo + step * i;
    ys[i] = f(xs[i]);
  }
  // Ties prefer the right endpoint, then the left one.
  int best = points - 1;
  for (int i = points - 2; i >= 0; --i) {
    if (ys[i] > ys[best]) best = i;
  }
  IntervalMax result{ys[best], xs[best], best != 0 && best != points - 1};
  if (!result.interior) return result;

  // Golden-section on the two cells around the incumbent.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = xs[best - 1];
  double b = xs[best + 1];
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  const double stop = rel_tol * (hi - lo);
  while (b - a > stop) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  if (f1 > result.value) result = {f1, x1, true};
  if (f2 > result.value) result = {f2, x2, true};
  return result;
}

}  // namespace herdrisk::detail
