#pragma once

// Cross-module identity checks on one configuration.

#include <string>
#include <vector>

#include "kitten/model.hpp"
#include "kitten/phase_space.hpp"

namespace kitten {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured deviation
  double tolerance = 0.0;
  std::string detail;      // error message when the check threw
};

/// Truncation, trace, entropy equality, grid normalizations, Gaussian
/// smoothing, the t = 0 closed form, angular normalization, Charlier
/// orthonormality, mode-coefficient norms, the two Hilbert-Schmidt routes,
/// Gaussian negativity, the coherent-state Wehrl entropy and the exact
/// evolution oracle at oracle_time.
std::vector<CheckResult> identity_suite(const SystemParams& params, const InitialState& init,
                                        int n_max, double t, const PhaseGrid& grid,
                                        double tail_tol = 1e-12, double oracle_time = 50.0);

/// "PASS name value tol" or "FAIL name value tol detail".
std::string verdict_line(const CheckResult& check);

}  // namespace kitten
