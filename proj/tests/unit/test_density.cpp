#include <doctest.h>

#include <memory>

#include "kitten/density.hpp"
#include "kitten/errors.hpp"

using namespace kitten;

namespace {

SystemParams drift_params() { return {0.15, 0.0, 1.0, 0.05}; }
InitialState drift_state() { return {Complex(3.0), 0.7, 0.0, Complex(0.0, 1.0)}; }

std::shared_ptr<const ModeData> drift_mode() {
  static const auto mode =
      std::make_shared<const ModeData>(ModeData::build(drift_params(), drift_state(), 64));
  return mode;
}

}  // namespace

TEST_SUITE("density") {

TEST_CASE("oscillator density matrix is a state") {
  const OscillatorDM rho = oscillator_dm(drift_mode(), 2205.0);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const auto [plus, minus] = branch_states(*drift_mode(), 2205.0);
  CHECK((plus.squaredNorm() + minus.squaredNorm()) / 2.0 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("entropy and purity at the kitten time") {
  const OscillatorDM rho = oscillator_dm(drift_mode(), 2205.0);
  const QubitDM q = qubit_dm(*drift_mode(), 2205.0);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(0.011774337604).epsilon(1e-9));
  CHECK(std::abs(von_neumann_entropy(rho) - von_neumann_entropy(q)) < 1e-10);
  CHECK(rho.purity() == doctest::Approx(0.9968437362277).epsilon(1e-10));
  CHECK(q.eigenvalues().first + q.eigenvalues().second == doctest::Approx(1.0));
  CHECK(q.rho11 + q.rho_m1m1 == doctest::Approx(1.0));
}

TEST_CASE("entropy at t = 0 of the hybrid state is ln 2 for |c| = 1") {
  const OscillatorDM rho = oscillator_dm(drift_mode(), 0.0);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("entropy of eigenvalue lists") {
  RVector ok(3);
  ok << 0.5, 0.5, -1e-11;
  CHECK(von_neumann_entropy(ok) == doctest::Approx(std::log(2.0)));
  RVector bad(2);
  bad << 1.1, -0.1;
  CHECK_THROWS_AS(von_neumann_entropy(bad), NumericalValidityError);
}

TEST_CASE("two-time trace product: matrix trace against the mode sum") {
  const auto mode = drift_mode();
  for (const auto& [t1, t2] : {std::pair{2205.0, 3371.0}, std::pair{100.0, 100.0},
                               std::pair{0.0, 287055.0}}) {
    const OscillatorDM a = oscillator_dm(mode, t1), b = oscillator_dm(mode, t2);
    const double direct = (a.rho * b.rho).trace().real();
    CHECK(trace_product_mode_sum(*mode, t1, t2) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(trace_product(a, b) == doctest::Approx(direct).epsilon(1e-12));
  }
  const OscillatorDM a = oscillator_dm(mode, 2205.0);
  CHECK(hs_distance(a, a) < 1e-7);
}

TEST_CASE("pure states") {
  CVector psi = CVector::Zero(5);
  psi[1] = Complex(0.0, 2.0);
  psi[3] = 1.0;
  const OscillatorDM rho = pure_dm(psi);
  CHECK(rho.purity() == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(rho) < 1e-10);
}

TEST_CASE("exact oracle coincides with the adiabatic solution where it is exact") {
  const InitialState init = drift_state();
  SUBCASE("no coupling") {
    const SystemParams p{0.15, 0.3, 1.0, 0.0};
    const ModeData mode = ModeData::build(p, init, 64);
    for (double t : {3.0, 41.7}) {
      const ExactState ex = exact_evolve_oracle(p, init, t, 64);
      CHECK(hs_distance(ex.oscillator, oscillator_dm(mode, t)) < 1e-10);
      CHECK(std::abs(ex.qubit.zeta - qubit_dm(mode, t).zeta) < 1e-10);
    }
  }
  SUBCASE("no tunneling") {
    // the truncated coupling needs a deeper basis than the state itself
    const SystemParams p{0.0, 0.3, 1.0, 0.05};
    const ModeData mode = ModeData::build(p, init, 120);
    for (double t : {3.0, 41.7}) {
      const ExactState ex = exact_evolve_oracle(p, init, t, 120);
      CHECK(hs_distance(ex.oscillator, oscillator_dm(mode, t)) < 1e-10);
      CHECK(std::abs(ex.qubit.zeta - qubit_dm(mode, t).zeta) < 1e-10);
    }
  }
  SUBCASE("kitten regime stays close at short times") {
    const ExactState ex = exact_evolve_oracle(drift_params(), init, 50.0, 64);
    const double d = hs_distance(ex.oscillator, oscillator_dm(drift_mode(), 50.0));
    CHECK(d < 0.05);
    CHECK(d == doctest::Approx(0.00898).epsilon(0.02));
  }
}

TEST_CASE("exact oracle rejects bad truncations") {
  CHECK_THROWS_AS(exact_evolve_oracle(drift_params(), drift_state(), 1.0, 0), DomainError);
}

}  // TEST_SUITE
