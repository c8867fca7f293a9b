#include <doctest.h>

#include "helpers.hpp"
#include "kitten/errors.hpp"
#include "kitten/reference.hpp"

using namespace kitten;

TEST_SUITE("reference") {

TEST_CASE("squeezed inner product: frozen value and Fock-space check") {
  const SqueezedRing ring{Complex(3.05), 0.7, 0.0, 0.0, 3};
  const Complex v = squeezed_inner_product(ring, 0, 1);
  CHECK(std::abs(v - Complex(-2.578186108895264e-06, -5.7917206300883706e-06)) < 1e-12);
  const CMatrix fock = ring.fock_vectors(96);
  const CMatrix g = gram(ring);
  CHECK((g - fock.adjoint() * fock).cwiseAbs().maxCoeff() < 1e-10);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(g(k, k) - 1.0) < 1e-12);
}

TEST_CASE("ring members are rotated copies") {
  const SqueezedRing ring{Complex(2.0, 0.5), 0.4, 0.3, 0.2, 4};
  CHECK(std::abs(ring.alpha(1) - Complex(2.0, 0.5) * std::polar(1.0, 0.2 + 0.5 * kPi)) < 1e-14);
  CHECK(ring.xi_phase(1) == doctest::Approx(0.3 + 2.0 * (0.2 + 0.5 * kPi)));
  const CVector direct = testing::expm_squeezed_state(ring.alpha(2), 0.4, ring.xi_phase(2), 160).head(30);
  CHECK((ring.fock_vectors(30).col(2) - direct).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(ring.fock_vectors(10), TruncationError);
}

TEST_CASE("reference Wigner function matches the Fock density matrix") {
  KittenEnsemble ens = KittenEnsemble::uniform(3, Complex(2.0), 0.5, 0.0, 0.4);
  ens.f = {1.0, std::polar(0.8, 1.0), std::polar(1.2, -2.0)};
  ens.g = {0.2, 1.0, 0.5};
  ens.tau = 0.7;
  const PhaseGrid g = PhaseGrid::make(0.0, 7.0, 41);
  const PhaseGrid closed = reference_wigner(ens, g);
  const OscillatorDM rho = reference_fock_dm(ens, 70);
  CHECK(rho.trace() == doctest::Approx(1.0));
  CHECK((closed.values - wigner_from_dm(rho.rho, g).values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(pure_norm(ens) > 0.0);
  CHECK(std::abs(cross_wigner(ens.ring(), 0, 1, Complex(0.3, 0.2)) -
                 std::conj(cross_wigner(ens.ring(), 1, 0, Complex(0.3, 0.2)))) < 1e-15);
}

TEST_CASE("ensemble validation") {
  KittenEnsemble ens = KittenEnsemble::uniform(2, Complex(1.0), 0.0, 0.0);
  ens.tau = 1.5;
  CHECK_THROWS_AS(ens.validate(), DomainError);
  ens.tau = 0.5;
  ens.g = {0.0, 0.0};
  CHECK_THROWS_AS(ens.validate(), DomainError);
  ens.g = {1.0};
  CHECK_THROWS_AS(ens.validate(), DomainError);
}

TEST_CASE("thermal mixture: closed forms against the Fock construction") {
  ThermalKittenMixture mix = ThermalKittenMixture::uniform(4, Complex(2.0), 0.5, 0.3, 0.2);
  mix.g = {1.0, 0.5, 0.8, 1.2};
  mix.nbar = 0.3;
  const OscillatorDM rho = thermal_fock_dm(mix, 60);
  const PhaseGrid g = PhaseGrid::make(0.0, 9.0, 41);
  CHECK((thermal_wigner(mix, g).values - wigner_from_dm(rho.rho, g).values).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((thermal_husimi(mix, g).values - husimi_from_dm(rho.rho, g).values).cwiseAbs().maxCoeff() < 1e-9);
  const CovarianceSummary a = thermal_moments(mix);
  const CovarianceSummary b = covariance_from_dm(rho.rho);
  CHECK(a.mean_q == doctest::Approx(b.mean_q).epsilon(1e-9).scale(1.0));
  CHECK(a.mean_p == doctest::Approx(b.mean_p).epsilon(1e-9).scale(1.0));
  CHECK(a.sigma11 == doctest::Approx(b.sigma11).epsilon(1e-9));
  CHECK(a.sigma12 == doctest::Approx(b.sigma12).epsilon(1e-9).scale(1.0));
  CHECK(a.sigma22 == doctest::Approx(b.sigma22).epsilon(1e-9));
  CHECK(thermal_wigner(mix, PhaseGrid::make(0.0, 12.0, 241)).integral() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("thermal occupation and the pure limit") {
  CHECK(ThermalKittenMixture::nbar_from_beta(std::log(2.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ThermalKittenMixture::nbar_from_beta(0.0), DomainError);
  ThermalKittenMixture mix = ThermalKittenMixture::uniform(2, Complex(1.5), 0.4, 0.0);
  KittenEnsemble ens = KittenEnsemble::uniform(2, Complex(1.5), 0.4, 0.0);
  ens.tau = 0.0;
  CHECK((thermal_fock_dm(mix, 50).rho - reference_fock_dm(ens, 50).rho).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(mix.big_n() == doctest::Approx(std::cosh(0.4)));
  mix.nbar = -0.1;
  CHECK_THROWS_AS(mix.validate(), DomainError);
}

TEST_CASE("Kullback-Leibler divergence of Husimi grids") {
  const PhaseGrid g = PhaseGrid::make(0.0, 8.0, 101);
  ThermalKittenMixture a = ThermalKittenMixture::uniform(1, Complex(1.0), 0.0, 0.0);
  ThermalKittenMixture b = ThermalKittenMixture::uniform(1, Complex(1.5), 0.0, 0.0);
  const PhaseGrid qa = thermal_husimi(a, g), qb = thermal_husimi(b, g);
  CHECK(kl_divergence_q(qa, qa) < 1e-14);
  // two unit-width Gaussians: KL = |delta alpha|^2
  CHECK(kl_divergence_q(qa, qb) == doctest::Approx(0.25).epsilon(1e-6));
  PhaseGrid zero = qb;
  zero.values.setZero();
  CHECK_THROWS_AS(kl_divergence_q(qa, zero), DomainError);
  CHECK_THROWS_AS(kl_divergence_q(qa, PhaseGrid::make(0.0, 8.0, 11)), ShapeError);
}

}  // TEST_SUITE
