#include <doctest.h>

#include <cmath>

#include "gaugecmp/constants.hpp"
#include "gaugecmp/hydrogenic.hpp"
#include "gaugecmp/quadrature.hpp"
#include "oracles.hpp"

using namespace gaugecmp;

namespace {

// composite Gauss-Legendre on [a, b]
template <class F>
double composite(F&& f, double a, double b, int panels = 40, int order = 20) {
  const auto& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < order; ++i) s += 0.5 * h * g.weights[i] * f(a + h * (p + 0.5 * (g.nodes[i] + 1.0)));
  return s;
}

}  // namespace

TEST_SUITE("hydrogenic") {

TEST_CASE("energies scale as Z^2/n^2") {
  CHECK(energy(1, 1.0) == doctest::Approx(-0.5 * kAlpha * kAlpha).epsilon(1e-15));
  CHECK(energy(2, 3.0) == doctest::Approx(-0.5 * 9.0 * kAlpha * kAlpha / 4.0).epsilon(1e-15));
  CHECK(gap(1, 2, 1.0) == doctest::Approx(0.375 * kAlpha * kAlpha).epsilon(1e-15));
  CHECK(gap(2, 1, 1.0) == doctest::Approx(-0.375 * kAlpha * kAlpha).epsilon(1e-15));
  const AtomicState s(2, 1, 0, 2.0);
  CHECK(s.length_scale() == doctest::Approx(1.0 / (2.0 * kAlpha)));
}

TEST_CASE("invalid quantum numbers are rejected") {
  CHECK_THROWS(AtomicState(0, 0, 0));
  CHECK_THROWS(AtomicState(2, 2, 0));
  CHECK_THROWS(AtomicState(2, 1, 2));
  CHECK_THROWS(AtomicState(1, 0, 0, -1.0));
}

TEST_CASE("radial functions match closed forms") {
  for (auto [n, l] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}})
    for (double Z : {1.0, 3.0}) {
      const RadialFunction R(n, l, Z);
      const double s = Z * kAlpha;
      for (double x : {0.01, 0.5, 1.7, 4.0, 11.0, 25.0}) {
        const double r = x / s;
        CHECK(R(r) == doctest::Approx(oracle::radial(n, l, s, r)).epsilon(1e-12));
      }
    }
}

TEST_CASE("radial normalization and orthogonality to 1e-10") {
  for (auto [n, l] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}, {4, 3}, {5, 2}}) {
    const double norm = composite([&](double r) { return std::pow(scaled_radial(n, l, r) * r, 2); }, 0.0, 250.0, 80);
    CHECK(std::abs(norm - 1.0) < 1e-10);
  }
  const double o = composite([](double r) { return scaled_radial(1, 0, r) * scaled_radial(2, 0, r) * r * r; }, 0.0, 80.0);
  CHECK(std::abs(o) < 1e-12);
  const double o2 = composite([](double r) { return scaled_radial(2, 1, r) * scaled_radial(3, 1, r) * r * r; }, 0.0, 120.0);
  CHECK(std::abs(o2) < 1e-12);
}

TEST_CASE("radial derivative agrees with central differences") {
  for (auto [n, l] : {std::pair{1, 0}, {2, 1}, {3, 2}, {4, 1}})
    for (double rho : {0.3, 1.0, 2.5, 7.0}) {
      const double h = 1e-5;
      const double fd = (scaled_radial(n, l, rho + h) - scaled_radial(n, l, rho - h)) / (2.0 * h);
      CHECK(scaled_radial_derivative(n, l, rho) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("spherical harmonics match explicit forms") {
  for (int l = 0; l <= 2; ++l)
    for (int m = -l; m <= l; ++m)
      for (double th : {0.1, 0.9, 2.3})
        for (double ph : {-2.0, 0.4, 3.0}) {
          const auto y = spherical_harmonic(l, m, th, ph);
          const auto o = oracle::ylm(l, m, th, ph);
          CHECK(std::abs(y - o) < 1e-14);
        }
  const auto yc = spherical_harmonic(2, 1, 0.3, -0.2, 0.5);
  const double r = std::sqrt(0.09 + 0.04 + 0.25);
  CHECK(std::abs(yc - oracle::ylm(2, 1, std::acos(0.5 / r), std::atan2(-0.2, 0.3))) < 1e-14);
}

TEST_CASE("Clebsch-Gordan agrees with ladder construction") {
  for (int j1 = 0; j1 <= 3; ++j1)
    for (int j2 = 0; j2 <= 3; ++j2) {
      const oracle::LadderCG cg(j1, j2);
      for (int J = std::abs(j1 - j2); J <= j1 + j2; ++J)
        for (int M = -J; M <= J; ++M)
          for (int m1 = -j1; m1 <= j1; ++m1) {
            const int m2 = M - m1;
            if (std::abs(m2) > j2) continue;
            CHECK(clebsch_gordan(j1, m1, j2, m2, J, M) == doctest::Approx(cg(m1, m2, J, M)).epsilon(1e-12));
          }
    }
}

TEST_CASE("Clebsch-Gordan completeness") {
  for (int j1 = 0; j1 <= 4; ++j1)
    for (int j2 = 0; j2 <= 4; ++j2)
      for (int m1 = -j1; m1 <= j1; ++m1)
        for (int m2 = -j2; m2 <= j2; ++m2) {
          double s = 0.0;
          for (int J = std::abs(j1 - j2); J <= j1 + j2; ++J) s += std::pow(clebsch_gordan(j1, m1, j2, m2, J, m1 + m2), 2);
          CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("Gaunt coefficients match sphere quadrature of explicit harmonics") {
  const auto& gt = gauss_legendre(24);
  const int nphi = 24;
  auto integral = [&](int l1, int m1, int l2, int m2, int l3, int m3) {
    std::complex<double> s = 0.0;
    for (int i = 0; i < 24; ++i)
      for (int j = 0; j < nphi; ++j) {
        const double th = std::acos(gt.nodes[i]), ph = 2.0 * oracle::pi * j / nphi;
        s += gt.weights[i] * (2.0 * oracle::pi / nphi) * std::conj(oracle::ylm(l1, m1, th, ph)) *
             oracle::ylm(l2, m2, th, ph) * oracle::ylm(l3, m3, th, ph);
      }
    return s;
  };
  for (int l1 = 0; l1 <= 2; ++l1)
    for (int l2 = 0; l2 <= 2; ++l2)
      for (int l3 = 0; l3 <= 2; ++l3)
        for (int m2 = -l2; m2 <= l2; ++m2)
          for (int m3 = -l3; m3 <= l3; ++m3) {
            const int m1 = m2 + m3;
            if (std::abs(m1) > l1) continue;
            const auto ref = integral(l1, m1, l2, m2, l3, m3);
            CHECK(std::abs(gaunt(l1, m1, l2, m2, l3, m3) - ref.real()) < 1e-13);
            CHECK(std::abs(ref.imag()) < 1e-13);
          }
}

}
