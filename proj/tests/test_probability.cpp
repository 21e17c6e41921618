#include <doctest.h>

#include <cmath>

#include "gaugecmp/constants.hpp"
#include "gaugecmp/probability.hpp"

using namespace gaugecmp;

namespace {

TransitionSpec excitation(Coupling c, double Z = 1.0) {
  return make_transition(AtomicState(1, 0, 0, Z), AtomicState(2, 1, 0, Z), c);
}

TransitionSpec decay(Coupling c, double Z = 1.0) {
  return make_transition(AtomicState(2, 1, 0, Z), AtomicState(1, 0, 0, Z), c);
}

CoherentGaussianPulse resonant_pulse(const TransitionSpec& spec) {
  const double W = std::abs(spec.gap());
  CoherentGaussianPulse p;
  p.k0 = Vec3(W, 0.0, 0.0);
  p.sigma = Vec3::Constant(W / 100.0);
  p.lambda0 = 1;
  p.Tstar = 300.0 / W;
  return p;
}

}  // namespace

TEST_SUITE("probability") {

TEST_CASE("vacuum probability is non-negative and vanishes at T = 0") {
  for (auto c : {Coupling::Minimal, Coupling::Dipole}) {
    const auto spec = excitation(c);
    const double W = spec.gap();
    CHECK(vacuum_probability(spec, 0.0).P0 == 0.0);
    for (double t : {1e-4, 0.01, 0.3, 1.0, 7.0, 40.0, 1000.0}) {
      const auto r = vacuum_probability(spec, t / W);
      CHECK(r.P0 >= 0.0);
      CHECK(r.quad_error < 1e-8 * r.P0 + 1e-20);
    }
  }
}

TEST_CASE("closed-form spectral density agrees with the mode sum") {
  for (auto c : {Coupling::Minimal, Coupling::Dipole}) {
    auto spec = excitation(c, 2.0);
    const double W = spec.gap();
    ProbabilityOptions closed, summed;
    closed.route = SpectralRoute::ClosedForm;
    summed.route = SpectralRoute::ModeSum;
    for (double t : {1.0, 100.0}) {
      const double a = vacuum_probability(spec, t / W, closed).P0;
      const double b = vacuum_probability(spec, t / W, summed).P0;
      CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
  }
}

TEST_CASE("long-time limit is approached from the finite-T curve") {
  const auto spec = excitation(Coupling::Minimal);
  const double W = spec.gap();
  const double inf = asymptotic_vacuum_probability(spec).P0;
  const double far = vacuum_probability(spec, 1e4 / W).P0;
  CHECK(far == doctest::Approx(inf).epsilon(1e-3));
}

TEST_CASE("emission probability grows at the golden-rule rate") {
  for (auto c : {Coupling::Minimal, Coupling::Dipole}) {
    const auto spec = decay(c);
    const double W = -spec.gap();
    const double t1 = 2e4 / W, t2 = 4e4 / W;
    const double slope = (emission_probability(spec, t2).P0 - emission_probability(spec, t1).P0) / (t2 - t1);
    CHECK(slope == doctest::Approx(emission_rate(spec)).epsilon(1e-2));
  }
  CHECK_THROWS(emission_probability(excitation(Coupling::Minimal), 10.0));
  CHECK_THROWS(asymptotic_vacuum_probability(decay(Coupling::Minimal)));
}

TEST_CASE("emission rate scales as Z^4 up to the envelope") {
  const double r1 = emission_rate_si(decay(Coupling::Dipole, 1.0));
  const double r2 = emission_rate_si(decay(Coupling::Dipole, 2.0));
  const double env1 = 1.0 + envelope_constant(decay(Coupling::Dipole, 1.0));
  const double env2 = 1.0 + envelope_constant(decay(Coupling::Dipole, 2.0));
  CHECK(r2 / r1 == doctest::Approx(16.0 * std::pow(env1 / env2, 6)).epsilon(1e-12));
}

TEST_CASE("cutoff sweep is monotone and converges to the unconstrained offset") {
  const auto spec = excitation(Coupling::Minimal);
  const auto pts = cutoff_sweep(spec, 0.0, {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0});
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(std::abs(pts[i].difference) >= std::abs(pts[i - 1].difference));
  const double full = asymptotic_vacuum_probability(excitation(Coupling::Minimal)).P0 -
                      asymptotic_vacuum_probability(excitation(Coupling::Dipole)).P0;
  CHECK(pts.back().difference == doctest::Approx(full).epsilon(1e-3));
  CHECK(std::abs(pts.front().difference) / pts.front().P_min < 1e-4);
}

TEST_CASE("parallel reductions are deterministic") {
  const auto spec = excitation(Coupling::Minimal);
  ProbabilityOptions one, many;
  many.workers = 4;
  const std::vector<double> lambdas = {0.01, 0.1, 1.0, 10.0};
  const auto a = cutoff_sweep(spec, 50.0 / spec.gap(), lambdas, one);
  const auto b = cutoff_sweep(spec, 50.0 / spec.gap(), lambdas, many);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].P_dip == b[i].P_dip);
    CHECK(a[i].P_min == b[i].P_min);
  }
  const auto pulse = resonant_pulse(spec);
  CoherentOptions c1, c4;
  c1.include_vacuum = c4.include_vacuum = false;
  c4.workers = 4;
  const double T = 200.0 / spec.gap();
  CHECK(coherent_Pphi(spec, pulse, T, c1).Pphi == coherent_Pphi(spec, pulse, T, c4).Pphi);
}

TEST_CASE("coherent P_phi scales with the square of the pulse amplitude") {
  const auto spec = excitation(Coupling::Dipole);
  auto pulse = resonant_pulse(spec);
  CoherentOptions o;
  o.include_vacuum = false;
  const double T = 400.0 / spec.gap();
  const double p1 = coherent_Pphi(spec, pulse, T, o).Pphi;
  pulse.amplitude_scale = 3.0;
  const double p3 = coherent_Pphi(spec, pulse, T, o).Pphi;
  CHECK(p3 == doctest::Approx(9.0 * p1).epsilon(1e-12));
  pulse.amplitude_scale = 0.0;
  CHECK(coherent_Pphi(spec, pulse, T, o).Pphi == 0.0);
}

TEST_CASE("coherent pulse grows as it passes the atom") {
  const auto spec = excitation(Coupling::Minimal);
  const auto pulse = resonant_pulse(spec);
  CoherentOptions o;
  o.include_vacuum = false;
  const double W = spec.gap();
  const double early = coherent_Pphi(spec, pulse, 100.0 / W, o).Pphi;
  const double mid = coherent_Pphi(spec, pulse, 300.0 / W, o).Pphi;
  const double late = coherent_Pphi(spec, pulse, 600.0 / W, o).Pphi;
  CHECK(early < mid);
  CHECK(mid < late);
  CHECK(coherent_Pphi(spec, pulse, 0.0, o).Pphi == 0.0);
}

TEST_CASE("pulse boxes that reach omega = 0 are rejected") {
  const auto spec = excitation(Coupling::Minimal);
  auto pulse = resonant_pulse(spec);
  pulse.sigma = Vec3::Constant(spec.gap());
  CHECK_THROWS(coherent_Pphi(spec, pulse, 1.0 / spec.gap()));
}

TEST_CASE("dipole-limit probability is coupling independent") {
  const auto a = dipole_limit_probability(excitation(Coupling::Minimal), 10.0 / excitation(Coupling::Minimal).gap(), 1e-4);
  const auto b = dipole_limit_probability(excitation(Coupling::Dipole), 10.0 / excitation(Coupling::Dipole).gap(), 1e-4);
  CHECK(a.P0 == doctest::Approx(b.P0).epsilon(1e-14));
  CHECK(a.P0 > 0.0);
}

}
