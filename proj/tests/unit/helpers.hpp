#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include "kitten/types.hpp"

namespace kitten::testing {

inline CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

// D(alpha) S(xi) |0> by dense matrix exponentials in a padded space.
inline CVector expm_squeezed_state(Complex alpha, double r, double vartheta, int dim) {
  const CMatrix a = annihilation(dim);
  const CMatrix ad = a.adjoint();
  const Complex xi = std::polar(r, vartheta);
  const CMatrix gd = alpha * ad - std::conj(alpha) * a;
  const CMatrix gs = 0.5 * (std::conj(xi) * a * a - xi * ad * ad);
  CVector vac = CVector::Zero(dim);
  vac[0] = 1.0;
  return gd.exp() * (gs.exp() * vac);
}

inline CMatrix expm_displacement(Complex z, int dim) {
  const CMatrix a = annihilation(dim);
  return CMatrix(z * a.adjoint() - std::conj(z) * a).exp();
}

}  // namespace kitten::testing
