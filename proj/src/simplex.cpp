#include "kitten/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kitten/errors.hpp"

namespace kitten {

SimplexResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0,
                          const RVector& step, const SimplexOptions& options) {
  const Eigen::Index n = x0.size();
  if (step.size() != n) throw ShapeError("nelder_mead: step and x0 sizes differ");
  SimplexResult out;
  std::vector<RVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  auto eval = [&](const RVector& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  vals[0] = eval(x0);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts[i + 1][i] += step[i];
    vals[i + 1] = eval(pts[i + 1]);
  }
  std::vector<int> order(static_cast<std::size_t>(n + 1));
  auto sort = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  };
  sort();
  out.history.push_back(vals[order[0]]);

  while (true) {
    const int best = order.front(), worst = order.back(), second = order[n - 1];
    if (vals[worst] - vals[best] < options.spread_tol) {
      out.converged = true;
      break;
    }
    if (out.evaluations >= options.max_evaluations) break;

    RVector centroid = RVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += pts[order[i]];
    centroid /= static_cast<double>(n);

    const RVector xr = centroid + options.reflection * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const RVector xe = centroid + options.expansion * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const RVector xc = outside ? RVector(centroid + options.contraction * (xr - centroid))
                                 : RVector(centroid + options.contraction * (pts[worst] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (Eigen::Index i = 1; i <= n; ++i) {
          const int k = order[i];
          pts[k] = pts[best] + options.shrink * (pts[k] - pts[best]);
          vals[k] = eval(pts[k]);
        }
      }
    }
    sort();
    out.history.push_back(std::min(out.history.back(), vals[order[0]]));
  }
  out.x = pts[order[0]];
  out.value = vals[order[0]];
  return out;
}

}  // namespace kitten
