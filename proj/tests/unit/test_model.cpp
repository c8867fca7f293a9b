#include <doctest.h>

#include "helpers.hpp"
#include "kitten/errors.hpp"
#include "kitten/model.hpp"

using namespace kitten;

namespace {

SystemParams drift_params() { return {0.15, 0.0, 1.0, 0.05}; }
InitialState drift_state() { return {Complex(3.0), 0.7, 0.0, Complex(0.0, 1.0)}; }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("derived system quantities") {
  const SystemParams p = drift_params();
  CHECK(p.x() == doctest::Approx(0.01));
  CHECK(p.delta_tilde() == doctest::Approx(0.15 * std::exp(-0.005)));
  CHECK(p.eps_tilde() == 0.0);
  CHECK_FALSE(p.outside_adiabatic_regime());
  CHECK(SystemParams{0.9, 0.0, 1.0, 0.05}.outside_adiabatic_regime());
  CHECK_THROWS_AS((SystemParams{0.1, 0.0, 1.0, -0.05}.validate()), DomainError);
  CHECK_THROWS_AS((SystemParams{0.1, 0.0, 0.0, 0.05}.validate()), DomainError);
  CHECK_THROWS_AS((InitialState{Complex(1.0), -0.1, 0.0, Complex(0.0)}.validate()), DomainError);
  CHECK(drift_state().alpha_plus(p) == Complex(3.05));
}

TEST_CASE("squeezed amplitudes against dense exponentials") {
  for (const auto& [alpha, r, th] : {std::tuple{Complex(3.05), 0.7, 0.0},
                                     std::tuple{Complex(1.2, -0.7), 0.4, 1.1},
                                     std::tuple{Complex(0.0), 0.9, 2.0}}) {
    const CVector s = squeezed_amplitudes(40, alpha, r, th);
    const CVector ref = testing::expm_squeezed_state(alpha, r, th, 200).head(40);
    CHECK((s - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(squeezed_amplitude(17, alpha, r, th) - s[17]) < 1e-14);
  }
}

TEST_CASE("coherent branch gives Poisson weights") {
  const CVector s = squeezed_amplitudes(30, Complex(0.0, 2.0), 0.0, 0.0);
  double logp = -4.0;
  for (int n = 0; n < 30; ++n) {
    if (n > 0) logp += std::log(4.0) - std::log(double(n));
    CHECK(std::norm(s[n]) == doctest::Approx(std::exp(logp)).epsilon(1e-12));
  }
}

TEST_CASE("default truncation is the smallest N meeting the tail") {
  const Complex a(3.05);
  const int n = default_truncation(a, 0.7, 0.0, 1e-12);
  const CVector s = squeezed_amplitudes(512, a, 0.7, 0.0);
  CHECK(s.tail(512 - n).squaredNorm() < 1e-12);
  CHECK(s.tail(512 - n + 1).squaredNorm() >= 1e-12);
  CHECK(n <= 64);
  CHECK_THROWS_AS(default_truncation(Complex(14.0), 1.5, 0.0, 1e-12), TruncationError);
}

TEST_CASE("displaced overlaps") {
  CHECK(displaced_overlap(3, 1, 0.01) == doctest::Approx(0.012145743094256616483).epsilon(1e-13));
  const double x = 0.3;
  const CMatrix d = testing::expm_displacement(Complex(-std::sqrt(x)), 120);
  for (int m = 0; m < 12; ++m) {
    for (int n = 0; n < 12; ++n) CHECK(std::abs(displaced_overlap(m, n, x) - d(m, n)) < 1e-12);
  }
  CHECK(displaced_overlap(4, 4, 0.0) == 1.0);
  CHECK(displaced_overlap(4, 2, 0.0) == 0.0);
}

TEST_CASE("mode coefficients") {
  const ModeData mode = ModeData::build(drift_params(), drift_state(), 64);
  const auto [c0, d0] = cd_coefficients(mode, 0, 100.0);
  CHECK(c0.real() == doctest::Approx(-0.54290859303402583).epsilon(1e-12));
  CHECK(std::abs(c0.imag()) < 1e-14);
  CHECK(std::abs(d0.real()) < 1e-14);
  CHECK(d0.imag() == doctest::Approx(1.3058523115612328).epsilon(1e-12));
  for (int n = 0; n < mode.n_max; ++n) {
    const auto [c, d] = cd_coefficients(mode, n, 2205.0);
    CHECK(std::abs(std::norm(c) + std::norm(d) - 2.0) < 1e-12);
    const auto [c_start, d_start] = cd_coefficients(mode, n, 0.0);
    CHECK(std::abs(c_start - 1.0) < 1e-15);
    CHECK(std::abs(d_start - Complex(0.0, 1.0)) < 1e-15);
  }
}

TEST_CASE("mode coefficients solve the two-level dynamics") {
  const ModeData mode = ModeData::build(SystemParams{0.15, 0.4, 1.0, 0.05}, drift_state(), 40);
  const double h = 1e-5, t = 37.0;
  for (int n : {0, 3, 11}) {
    const double s = n % 2 ? -1.0 : 1.0;
    const double et = mode.params.eps_tilde(), dn = mode.delta_n[n];
    // i d/dt (C, D) = [[-eps, s delta], [s delta, eps]] (C, D)
    const auto [cp, dp] = cd_coefficients(mode, n, t + h);
    const auto [cm, dm] = cd_coefficients(mode, n, t - h);
    const auto [c, d] = cd_coefficients(mode, n, t);
    const Complex i(0.0, 1.0);
    CHECK(std::abs(i * (cp - cm) / (2.0 * h) - (-et * c + s * dn * d)) < 1e-8);
    CHECK(std::abs(i * (dp - dm) / (2.0 * h) - (s * dn * c + et * d)) < 1e-8);
  }
}

TEST_CASE("truncation checks") {
  const ModeData ok = ModeData::build(drift_params(), drift_state());
  CHECK(ok.tail < 1e-12);
  CHECK_NOTHROW(ok.check_truncation());
  const ModeData bad = ModeData::build(drift_params(), drift_state(), 8);
  CHECK_THROWS_AS(bad.check_truncation(), TruncationError);
}

TEST_CASE("mode vectors carry the bare-basis phases") {
  const ModeData mode = ModeData::build(drift_params(), drift_state(), 64);
  const ModeVectors v = mode_vectors(mode, 0.0);
  CHECK((v.up - mode.s_amp).cwiseAbs().maxCoeff() < 1e-15);
  for (int n = 0; n < 64; ++n) {
    CHECK(std::abs(v.down[n] - (n % 2 ? -1.0 : 1.0) * Complex(0.0, 1.0) * mode.s_amp[n]) < 1e-15);
  }
}

}  // TEST_SUITE
