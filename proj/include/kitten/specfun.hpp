#pragma once

// Special functions behind the mode sums: Hermite and Laguerre polynomials,
// terminating 2F0, truncated Kummer 1F1 and the phase-space tensor kernel
// G_{k,l}(z).  Factorial ratios go through a log-factorial cache so orders up
// to a few hundred stay finite.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "kitten/errors.hpp"
#include "kitten/types.hpp"

namespace kitten {

/// Immutable table of log(n!) for 0 <= n <= max_order.
class PolynomialCache {
 public:
  explicit PolynomialCache(int max_order = 512);

  int max_order() const { return max_order_; }

  /// log(n!); throws CapacityError past max_order.
  double log_factorial(int n) const {
    require(n);
    return log_factorial_[static_cast<std::size_t>(n)];
  }

  void require(int n) const;

  /// Process-wide cache with the default capacity.
  static const PolynomialCache& shared();

 private:
  int max_order_;
  std::vector<double> log_factorial_;
};

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
template <typename Scalar>
std::complex<Scalar> hermite(int n, std::complex<Scalar> z,
                             const PolynomialCache& cache = PolynomialCache::shared()) {
  cache.require(n);
  std::complex<Scalar> prev(1), cur = Scalar(2) * z;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    std::complex<Scalar> next = Scalar(2) * z * cur - Scalar(2 * k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// H_0(z) .. H_{count-1}(z).
std::vector<Complex> hermite_sequence(int count, Complex z,
                                      const PolynomialCache& cache = PolynomialCache::shared());

/// Associated Laguerre polynomial L_n^j(x) by the stable upward recurrence in n.
double assoc_laguerre(int n, int j, double x);

/// L_n^j(x) from the explicit alternating finite sum; reference route for
/// assoc_laguerre.
double assoc_laguerre_explicit(int n, int j, double x);

/// 2F0(-n, -m; ; z) as its exact finite sum (terminates at r = min(n, m)).
template <typename Scalar>
std::complex<Scalar> hyp2f0_terminating(int n, int m, std::complex<Scalar> z) {
  const int top = std::min(n, m);
  std::complex<Scalar> sum(1), term(1);
  for (int r = 0; r < top; ++r) {
    term *= std::complex<Scalar>(Scalar(-n + r) * Scalar(-m + r) / Scalar(r + 1)) * z;
    sum += term;
  }
  return sum;
}

/// Kummer 1F1(a; b; z) by its power series.  Stops once a term drops below
/// tol * |partial sum|; terminating cases (a a nonpositive integer) are summed
/// exactly.  Throws DomainError for b a nonpositive integer and SeriesError after
/// 500 terms.
double kummer_truncated(double a, double b, double z, double tol = 1e-15);

/// G_{k,l}(z) = exp(-|z|^2/2) z*^k z^l / sqrt(k! l!) 2F0(-k, -l; ; -1/|z|^2).
///
/// Equivalent to (-1)^k <l| D(z) |k>.  The 2F0 sum is taken from the top term
/// down with the |z|^{-2r} powers folded into the prefactor, so z = 0 yields the
/// analytic limit (-1)^k delta_{kl}.  Long double is used when |z| < 0.3 and
/// k + l > 20.
Complex g_kernel(int k, int l, Complex z, const PolynomialCache& cache = PolynomialCache::shared());

/// out[k] = sqrt(k!/(k+d)!) x^{d/2} e^{-x/2} L_k^d(x) for k < out.size(), by the
/// normalized three-term recurrence.  Every entry is a displacement matrix
/// element in modulus, so the run stays bounded for any x >= 0.
void scaled_laguerre_run(double x, int d, std::span<double> out);

/// <m| D(z) |n> for 0 <= m, n < dim, D(z) = exp(z a^dag - z^* a).
CMatrix displacement_matrix(Complex z, int dim);

/// Matrix of G_{k,l}(z) for 0 <= k, l < dim.
CMatrix g_kernel_matrix(Complex z, int dim);

}  // namespace kitten
