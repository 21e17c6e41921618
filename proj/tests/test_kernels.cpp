#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gaugecmp/constants.hpp"
#include "gaugecmp/kernels.hpp"

using namespace gaugecmp;
using cd = std::complex<double>;

TEST_SUITE("kernels") {

TEST_CASE("sinc and switching factor") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-9) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(sinc(0.3) == doctest::Approx(std::sin(0.3) / 0.3).epsilon(1e-15));
  const double T = 7.0;
  CHECK(std::abs(switching_sinc(0.4, 0.4, T, Branch::Annihilation) - cd(T, 0.0)) < 1e-14);
  // T e^{ix} sinc(x) = (e^{2ix} - 1)/(2ix/T)
  const double Omega = 0.4, omega = 1.1;
  const double x = (Omega + omega) * T / 2.0;
  const cd ref = (std::polar(1.0, 2.0 * x) - 1.0) / cd(0.0, 2.0 * x / T);
  CHECK(std::abs(switching_sinc(Omega, omega, T, Branch::Creation) - ref) < 1e-13);
}

TEST_CASE("transition specs validate their states") {
  const AtomicState g(1, 0, 0), e(2, 1, 0), other(2, 1, 0, 2.0);
  CHECK_THROWS(make_transition(g, g, Coupling::Minimal));
  CHECK_THROWS(make_transition(g, other, Coupling::Minimal));
  CHECK_THROWS(make_transition(g, e, Coupling::Minimal, -1.0));
  CHECK_THROWS(make_transition(g, e, Coupling::Minimal, 1.0, -2.0));
  const auto t = make_transition(g, e, Coupling::Dipole, 3.0);
  CHECK(t.gap() == doctest::Approx(0.375 * kAlpha * kAlpha));
}

TEST_CASE("dressing coefficients are conjugate under exchange of states") {
  const AtomicState g(1, 0, 0), e(2, 1, 1), s(2, 0, 0), d(3, 2, -1);
  const double a = 1.0 / kAlpha;
  const auto mode = ModeIndex::make(Vec3(0.4, -0.2, 0.7) / a, 2);
  for (auto [f, i] : {std::pair{e, g}, std::pair{d, s}, std::pair{g, d}}) {
    const auto fi = dressed_L(f, i, mode, Coupling::Minimal);
    const auto if_ = dressed_L(i, f, mode, Coupling::Minimal);
    CHECK(std::abs(if_.creation - std::conj(fi.annihilation)) <= 1e-12 * std::abs(fi.annihilation));
    CHECK(std::abs(if_.annihilation - std::conj(fi.creation)) <= 1e-12 * std::abs(fi.creation));
  }
  const auto none = dressed_L(e, g, mode, Coupling::Dipole);
  CHECK(none.annihilation == cd(0.0));
  const auto degenerate = dressed_L(AtomicState(2, 1, 0), AtomicState(2, 0, 0), mode, Coupling::Minimal);
  CHECK(degenerate.creation == cd(0.0));
}

TEST_CASE("amplitudes grow linearly for short switching times") {
  const auto spec = make_transition(AtomicState(1, 0, 0), AtomicState(2, 1, 0), Coupling::Minimal);
  const AmplitudeModel model(spec);
  const auto mode = ModeIndex::make(Vec3(0.1, 0.0, 0.3) * kAlpha, 1);
  const double T = 1e-3 / mode.omega;
  const auto h1 = model(mode, T), h2 = model(mode, 2.0 * T);
  CHECK(std::abs(h2.h2) / std::abs(h1.h2) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(std::abs(h2.h1) / std::abs(h1.h1) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("global phase only rotates the amplitude") {
  const auto spec = make_transition(AtomicState(1, 0, 0), AtomicState(2, 1, -1), Coupling::Dipole);
  const AmplitudeModel model(spec);
  const auto mode = ModeIndex::make(Vec3(0.2, 0.5, -0.1) * kAlpha, 2);
  const auto a = model(mode, 3e5, false), b = model(mode, 3e5, true);
  CHECK(std::abs(a.h2) == doctest::Approx(std::abs(b.h2)).epsilon(1e-14));
}

TEST_CASE("closed-form and partial-wave amplitude paths agree for 1s-2p") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto c : {Coupling::Minimal, Coupling::Dipole})
    for (int m = -1; m <= 1; ++m) {
      const double Z = 2.0;
      const AtomicState g(1, 0, 0, Z), e(2, 1, m, Z);
      const auto spec = make_transition(g, e, c);
      const AmplitudeModel closed(spec);
      REQUIRE(closed.closed_form());
      const double s = Z * kAlpha;
      for (int t = 0; t < 5; ++t) {
        const Vec3 k = Vec3(u(rng), u(rng), u(rng)) * 3.0 * s;
        const auto mode = ModeIndex::make(k, 1 + t % 2);
        const Operator op = c == Coupling::Minimal ? Operator::Gradient : Operator::Position;
        const CVec3 ref = expansion(e, g, op)(k, +1);
        const CVec3 v = closed.element(k, +1);
        const cd pv = mode.epsilon.cast<cd>().dot(v), pr = mode.epsilon.cast<cd>().dot(ref);
        CHECK(std::abs(pv - pr) <= 1e-9 * std::max(std::abs(pr), 1e-12 * ref.norm()) + 1e-14 * ref.norm());
      }
    }
}

}
