#pragma once

// Nelder-Mead simplex minimizer.

#include <functional>
#include <vector>

#include "kitten/types.hpp"

namespace kitten {

struct SimplexOptions {
  int max_evaluations = 4000;
  double spread_tol = 1e-6;  // stop when max f - min f over the simplex drops below this
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct SimplexResult {
  RVector x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> history;  // best value after each iteration
};

/// Minimizes f from the axis-aligned simplex x0, x0 + step_i e_i.
SimplexResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0,
                          const RVector& step, const SimplexOptions& options = {});

}  // namespace kitten
