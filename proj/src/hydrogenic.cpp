#include "gaugecmp/hydrogenic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaugecmp {

namespace {

void check_level(int n, double Z, double mu_e) {
  if (n < 1) throw std::invalid_argument("principal quantum number must be >= 1, got " + std::to_string(n));
  if (!(Z > 0.0)) throw std::invalid_argument("nuclear charge Z must be positive");
  if (!(mu_e > 0.0)) throw std::invalid_argument("reduced mass must be positive");
}

void check_nl(int n, int l) {
  if (n < 1 || l < 0 || l >= n)
    throw std::invalid_argument("invalid (n, l) = (" + std::to_string(n) + ", " + std::to_string(l) + ")");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

// Generalized Laguerre L_k^{(a)}(x) by forward recurrence.
double laguerre(int k, double a, double x) {
  if (k < 0) return 0.0;
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + a - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double radial_norm(int n, int l) {
  const double c = 2.0 / n;
  return std::sqrt(c * c * c * factorial(n - l - 1) / (2.0 * n * factorial(n + l)));
}

}  // namespace

AtomicState::AtomicState(int n_, int l_, int m_, double Z_, double mu_)
    : n(n_), l(l_), m(m_), Z(Z_), mu_e(mu_) {
  check_level(n, Z, mu_e);
  check_nl(n, l);
  if (m < -l || m > l)
    throw std::invalid_argument("magnetic quantum number out of range: m = " + std::to_string(m));
}

double AtomicState::energy() const { return gaugecmp::energy(n, Z, mu_e); }

double AtomicState::length_scale() const { return 1.0 / (mu_e * kAlpha * Z); }

bool AtomicState::same_atom(const AtomicState& other) const {
  return Z == other.Z && mu_e == other.mu_e;
}

double energy(int n, double Z, double mu_e) {
  check_level(n, Z, mu_e);
  return -0.5 * mu_e * Z * Z * kAlpha * kAlpha / (static_cast<double>(n) * n);
}

double gap(const AtomicState& initial, const AtomicState& final_state) {
  if (!initial.same_atom(final_state))
    throw std::invalid_argument("states belong to different atoms");
  return final_state.energy() - initial.energy();
}

double gap(int n_i, int n_f, double Z, double mu_e) {
  check_level(n_i, Z, mu_e);
  check_level(n_f, Z, mu_e);
  const double ni2 = static_cast<double>(n_i) * n_i;
  const double nf2 = static_cast<double>(n_f) * n_f;
  return 0.5 * mu_e * Z * Z * kAlpha * kAlpha * (1.0 / ni2 - 1.0 / nf2);
}

double scaled_radial(int n, int l, double rho) {
  check_nl(n, l);
  if (rho < 0.0) throw std::invalid_argument("radius must be nonnegative");
  const double x = 2.0 * rho / n;
  return radial_norm(n, l) * std::exp(-0.5 * x) * std::pow(x, l) * laguerre(n - l - 1, 2 * l + 1, x);
}

double scaled_radial_derivative(int n, int l, double rho) {
  check_nl(n, l);
  if (rho < 0.0) throw std::invalid_argument("radius must be nonnegative");
  const double x = 2.0 * rho / n;
  const int k = n - l - 1;
  const double lag = laguerre(k, 2 * l + 1, x);
  const double dlag = -laguerre(k - 1, 2 * l + 2, x);
  const double xl = std::pow(x, l);
  const double dxl = l == 0 ? 0.0 : l * std::pow(x, l - 1);
  const double d = (dxl - 0.5 * xl) * lag + xl * dlag;
  return (2.0 / n) * radial_norm(n, l) * std::exp(-0.5 * x) * d;
}

RadialFunction::RadialFunction(int n, int l, double Z, double mu_e) : n_(n), l_(l) {
  check_level(n, Z, mu_e);
  check_nl(n, l);
  scale_ = Z * mu_e * kAlpha;
}

double RadialFunction::operator()(double r) const {
  return std::pow(scale_, 1.5) * scaled_radial(n_, l_, scale_ * r);
}

double RadialFunction::derivative(double r) const {
  return std::pow(scale_, 2.5) * scaled_radial_derivative(n_, l_, scale_ * r);
}

RadialFunction radial(int n, int l, double Z, double mu_e) { return RadialFunction(n, l, Z, mu_e); }

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || m < -l || m > l)
    throw std::invalid_argument("invalid spherical harmonic (l, m) = (" + std::to_string(l) + ", " +
                                std::to_string(m) + ")");
  const int am = std::abs(m);
  const double p = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), theta);
  const std::complex<double> y = p * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

std::complex<double> spherical_harmonic(int l, int m, double x, double y, double z) {
  const double rho = std::hypot(x, y);
  const double theta = (rho == 0.0 && z == 0.0) ? 0.0 : std::atan2(rho, z);
  const double phi = rho == 0.0 ? 0.0 : std::atan2(y, x);
  return spherical_harmonic(l, m, theta, phi);
}

double clebsch_gordan(int l1, int m1, int l2, int m2, int L, int M) {
  if (l1 < 0 || l2 < 0 || L < 0 || std::abs(m1) > l1 || std::abs(m2) > l2)
    throw std::invalid_argument("invalid angular momentum quantum numbers");
  if (m1 + m2 != M) return 0.0;
  if (L < std::abs(l1 - l2) || L > l1 + l2 || std::abs(M) > L) return 0.0;

  const double pre = std::sqrt((2.0 * L + 1.0) * factorial(L + l1 - l2) * factorial(L - l1 + l2) *
                               factorial(l1 + l2 - L) / factorial(l1 + l2 + L + 1));
  const double norm = std::sqrt(factorial(L + M) * factorial(L - M) * factorial(l1 - m1) *
                                factorial(l1 + m1) * factorial(l2 - m2) * factorial(l2 + m2));
  double sum = 0.0;
  for (int k = 0; k <= l1 + l2 - L; ++k) {
    const int a = l1 + l2 - L - k;
    const int b = l1 - m1 - k;
    const int c = l2 + m2 - k;
    const int d = L - l2 + m1 + k;
    const int e = L - l1 - m2 + k;
    if (a < 0 || b < 0 || c < 0 || d < 0 || e < 0) continue;
    const double term = 1.0 / (factorial(k) * factorial(a) * factorial(b) * factorial(c) *
                               factorial(d) * factorial(e));
    sum += (k % 2 == 0) ? term : -term;
  }
  return pre * norm * sum;
}

double gaunt(int l1, int m1, int l2, int m2, int l3, int m3) {
  if (m2 + m3 != m1) return 0.0;
  if ((l1 + l2 + l3) % 2 != 0) return 0.0;
  const double c0 = clebsch_gordan(l2, 0, l3, 0, l1, 0);
  if (c0 == 0.0) return 0.0;
  return std::sqrt((2.0 * l2 + 1.0) * (2.0 * l3 + 1.0) / (4.0 * kPi * (2.0 * l1 + 1.0))) * c0 *
         clebsch_gordan(l2, m2, l3, m3, l1, m1);
}

}  // namespace gaugecmp
