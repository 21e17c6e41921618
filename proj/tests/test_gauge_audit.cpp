#include <doctest.h>

#include <cmath>

#include "gaugecmp/gauge_audit.hpp"

using namespace gaugecmp;
using namespace gaugecmp::audit;

namespace {

GridOptions coarse_grid() {
  GridOptions g;
  g.radial_panels = 10;
  g.radial_order = 10;
  g.polar_order = 16;
  g.azimuthal_points = 32;
  return g;
}

const AuditBasis& fine_basis() {
  static const AuditBasis basis(1.0, 1.0);
  return basis;
}

PlaneWave test_wave(const AuditBasis& basis) {
  PlaneWave w;
  w.A0 = 1e-3;
  w.omega = basis.energy(basis.index_of(2, 1, 0)) - basis.energy(0);
  w.eps = Vec3(1.0, 0.0, 0.0);
  w.k = Vec3(0.0, 1.0, 1.0).normalized() * (0.3 / basis.length());
  w.phase = 0.3;
  return w;
}

}  // namespace

TEST_SUITE("gauge-audit") {

TEST_CASE("spatial derivatives match finite differences") {
  SpatialFunction f({SpatialTerm{0.7, {2, 1, 0}, Vec3(0.3, -0.2, 0.5), 0.4, false},
                     SpatialTerm{-1.3, {0, 0, 3}, Vec3(0.0, 0.1, 0.0), 0.0, true}});
  const Vec3 x(0.4, -0.8, 1.1);
  const double h = 1e-5;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 dx = Vec3::Zero();
    dx[axis] = h;
    const double fd = (f(x + dx) - f(x - dx)) / (2 * h);
    CHECK(f.derivative(axis)(x) == doctest::Approx(fd).epsilon(1e-8));
  }
  TimeFunction g({TimeTerm{1.5, 2, 0.9, 0.2}, TimeTerm{-0.4, 0, 2.0, 1.0}});
  const double t = 1.7;
  CHECK(g.derivative()(t) == doctest::Approx((g(t + h) - g(t - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("fields are invariant under gauge changes") {
  const AuditBasis basis(1.0, 1.0, coarse_grid());
  const auto field = plane_wave_field(test_wave(basis));
  const double a = basis.length();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto chi = random_polynomial_chi(seed, 1e-3 * a, a, 10.0, 0.4);
    const auto moved = gauge_transform(field, chi);
    for (const Vec3 x : {Vec3(0.3, 0.2, -0.1) * a, Vec3(-1.0, 2.0, 0.5) * a}) {
      for (double t : {0.0, 3.0, 17.0}) {
        CHECK((moved.electric(x, t) - field.electric(x, t)).norm() < 1e-12 * (1e-3 + field.electric(x, t).norm()));
        CHECK((moved.magnetic(x, t) - field.magnetic(x, t)).norm() < 1e-12 * (1e-3 + field.magnetic(x, t).norm()));
      }
    }
  }
}

TEST_CASE("plane wave is transverse") {
  const AuditBasis basis(1.0, 1.0, coarse_grid());
  auto w = test_wave(basis);
  w.eps = Vec3(1.0, 0.0, 0.0);
  const auto field = plane_wave_field(w);
  CHECK(std::abs(field.divergence(Vec3(0.1, 0.7, -0.3), 2.0)) < 1e-15);
}

TEST_CASE("basis is orthonormal on the quadrature grid") {
  const AuditBasis basis(2.0, 1.0);
  const auto overlap = basis.scalar_matrix(SpatialFunction::constant(1.0));
  const auto I = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  CHECK((overlap - I).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("wavefunction gradient matches finite differences") {
  const AuditBasis basis(1.0, 1.0, coarse_grid());
  const Vec3 x(0.3, -0.4, 0.9);
  const double h = 1e-5;
  for (int i = 0; i < basis.size(); ++i) {
    const auto g = basis.wavefunction_gradient(i, x);
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 dx = Vec3::Zero();
      dx[axis] = h;
      const auto fd = (basis.wavefunction(i, x + dx) - basis.wavefunction(i, x - dx)) / (2 * h);
      CHECK(std::abs(g[axis] - fd) < 1e-8);
    }
  }
}

TEST_CASE("momentum matrix is hermitian") {
  const auto& basis = fine_basis();
  const auto field = plane_wave_field(test_wave(basis));
  const auto m = basis.symmetric_momentum_matrix(field.A[0].space);
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-10 * m.cwiseAbs().maxCoeff());
}

TEST_CASE("zero and purely time-dependent gauge functions") {
  const auto& basis = fine_basis();
  const auto w = test_wave(basis);
  const auto field = plane_wave_field(w);
  const double T = 3.25 * 2.0 * M_PI / w.omega;
  const FieldInBasis a(basis, field);
  const FieldInBasis same(basis, gauge_transform(field, GaugeFunction{}));
  CHECK(amplitude_deviation(a, same, T, true) < 1e-15);

  GaugeFunction time_only{{ScalarPart{TimeFunction::cosine(0.7 * w.omega, 0.1, 1e-3), SpatialFunction::constant(1.0)}}};
  const FieldInBasis shifted(basis, gauge_transform(field, time_only));
  CHECK(amplitude_deviation(a, shifted, T, true) < 1e-10);
}

TEST_CASE("dressed amplitudes are gauge invariant, naive ones are not") {
  const auto& basis = fine_basis();
  const auto w = test_wave(basis);
  const auto field = plane_wave_field(w);
  const double T = 3.25 * 2.0 * M_PI / w.omega;
  const double a = basis.length();
  const FieldInBasis ref(basis, field);
  const auto chi = random_polynomial_chi(7, w.A0 * a, a, T, w.omega);
  const FieldInBasis moved(basis, gauge_transform(field, chi));
  CHECK(amplitude_deviation(ref, moved, T, true) < 1e-9);
  CHECK(amplitude_deviation(ref, moved, T, false) > 1e-3);
}

TEST_CASE("dressing coefficient shifts by the gauge function") {
  const auto& basis = fine_basis();
  const auto w = test_wave(basis);
  const auto field = plane_wave_field(w);
  const double a = basis.length();
  const auto chi = random_polynomial_chi(11, w.A0 * a, a, 20.0, w.omega);
  const FieldInBasis ref(basis, field);
  const FieldInBasis moved(basis, gauge_transform(field, chi));
  const int s = 0, p = basis.index_of(2, 1, 1);
  const double t = 4.0;
  const auto expected = dressed_L_semiclassical(ref, s, p, t) - chi_element(basis, chi, s, p, t);
  CHECK(std::abs(dressed_L_semiclassical(moved, s, p, t) - expected) < 1e-9 * (std::abs(expected) + w.A0 * a));
}

TEST_CASE("amplitude rejects diagonal pairs") {
  const AuditBasis basis(1.0, 1.0, coarse_grid());
  const FieldInBasis f(basis, plane_wave_field(test_wave(basis)));
  CHECK_THROWS(amplitude(f, 0, 0, 1.0, true));
}

TEST_CASE("small audit run passes every case") {
  AuditConfig cfg;
  cfg.random_chi = 3;
  const auto report = run_gauge_audit(cfg);
  CHECK(!report.cases.empty());
  for (const auto& c : report.cases) {
    INFO(c.name << " deviation=" << c.deviation << " threshold=" << c.threshold);
    CHECK(c.pass());
  }
  CHECK(report.to_text().find("PASS") != std::string::npos);
}

}
