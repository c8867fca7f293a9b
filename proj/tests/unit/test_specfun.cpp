#include <doctest.h>

#include "helpers.hpp"
#include "kitten/errors.hpp"
#include "kitten/specfun.hpp"

using namespace kitten;

TEST_SUITE("specfun") {

TEST_CASE("hermite matches a frozen high-precision value") {
  const Complex h = hermite(12, Complex(0.75, 0.5));
  CHECK(h.real() == doctest::Approx(-4537634.091552734375).epsilon(1e-13));
  CHECK(h.imag() == doctest::Approx(1040909.009765625).epsilon(1e-13));
  const auto seq = hermite_sequence(13, Complex(0.75, 0.5));
  CHECK(std::abs(seq[12] - h) < 1e-6);
  CHECK(seq[0] == Complex(1.0));
}

TEST_CASE("hermite satisfies the derivative identity H_n' = 2n H_{n-1}") {
  const Complex z(0.3, -0.4);
  const double h = 1e-6;
  for (int n = 1; n < 10; ++n) {
    const Complex deriv = (hermite(n, z + h) - hermite(n, z - h)) / (2.0 * h);
    CHECK(std::abs(deriv - 2.0 * n * hermite(n - 1, z)) < 1e-5 * (1.0 + std::abs(deriv)));
  }
}

TEST_CASE("factorial cache enforces its capacity") {
  const PolynomialCache small(20);
  CHECK(small.log_factorial(20) == doctest::Approx(std::lgamma(21.0)));
  CHECK_THROWS_AS(small.log_factorial(21), CapacityError);
  CHECK_THROWS_AS(hermite(600, Complex(0.1)), CapacityError);
}

TEST_CASE("associated Laguerre: recurrence, explicit sum and frozen value") {
  CHECK(assoc_laguerre(15, 4, 0.8) == doctest::Approx(24.432064897030720515).epsilon(1e-13));
  CHECK(assoc_laguerre_explicit(15, 4, 0.8) == doctest::Approx(24.432064897030720515).epsilon(1e-12));
  for (int n = 0; n < 30; n += 3) {
    for (int j = 0; j < 5; ++j) {
      const double a = assoc_laguerre(n, j, 0.37), b = assoc_laguerre_explicit(n, j, 0.37);
      CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(b)));
    }
  }
  CHECK(assoc_laguerre(0, 3, 5.0) == 1.0);
  CHECK(assoc_laguerre(1, 2, 5.0) == doctest::Approx(-2.0));
}

TEST_CASE("terminating 2F0") {
  CHECK(hyp2f0_terminating(4, 6, Complex(-0.37)).real() == doctest::Approx(-0.8044604).epsilon(1e-12));
  CHECK(hyp2f0_terminating(0, 6, Complex(2.0)) == Complex(1.0));
}

TEST_CASE("Kummer 1F1") {
  CHECK(kummer_truncated(-1.5, 0.5, -0.0025) ==
        doctest::Approx(1.0075031244793061369).epsilon(1e-14));
  // terminating case is a polynomial: 1F1(-2; 1; z) = 1 - 2z + z^2/2
  CHECK(kummer_truncated(-2.0, 1.0, 3.0) == doctest::Approx(1.0 - 6.0 + 4.5));
  // 1F1(a; a; z) = e^z
  CHECK(kummer_truncated(1.3, 1.3, 2.5) == doctest::Approx(std::exp(2.5)).epsilon(1e-13));
  CHECK_THROWS_AS(kummer_truncated(0.5, -2.0, 1.0), DomainError);
  CHECK_THROWS_AS(kummer_truncated(0.5, 1.0, 900.0), SeriesError);
}

TEST_CASE("phase-space kernel G_{k,l}") {
  const Complex g = g_kernel(2, 5, Complex(0.3, -0.1));
  CHECK(g.real() == doctest::Approx(0.021010397888386802404).epsilon(1e-12));
  CHECK(g.imag() == doctest::Approx(-0.030348352505447608872).epsilon(1e-12));
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) {
      const Complex v = g_kernel(k, l, Complex(0.0));
      CHECK(v == Complex(k == l ? (k % 2 ? -1.0 : 1.0) : 0.0));
    }
  }
  // deep orders near the origin stay finite and small
  CHECK(std::abs(g_kernel(30, 2, Complex(0.05, 0.02))) < 1e-20);
}

TEST_CASE("displacement matrix against a dense exponential") {
  const Complex z(0.8, -0.6);
  const int dim = 24;
  const CMatrix d = displacement_matrix(z, dim);
  const CMatrix ref = testing::expm_displacement(z, 140).topLeftCorner(dim, dim);
  CHECK((d - ref).cwiseAbs().maxCoeff() < 1e-11);
  const CMatrix g = g_kernel_matrix(z, dim);
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) {
      CHECK(std::abs(g(k, l) - (k % 2 ? -1.0 : 1.0) * d(l, k)) < 1e-11);
    }
  }
}

TEST_CASE("displacement matrix stays unitary at large orders") {
  const int dim = 200;
  const CMatrix d = displacement_matrix(Complex(2.5, 1.0), dim);
  // rows far from the truncation edge are orthonormal
  const CMatrix block = d.topRows(80);
  const CMatrix gram = block * block.adjoint();
  CHECK((gram - CMatrix::Identity(80, 80)).cwiseAbs().maxCoeff() < 1e-10);
}

}  // TEST_SUITE
