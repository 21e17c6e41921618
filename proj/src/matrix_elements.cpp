#include "gaugecmp/matrix_elements.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "gaugecmp/quadrature.hpp"

namespace gaugecmp {

const char* to_string(Coupling c) { return c == Coupling::Minimal ? "minimal" : "dipole"; }

std::pair<Vec3, Vec3> polarization_basis(const Vec3& k) {
  const double kk = k.norm();
  if (kk == 0.0) return {Vec3::UnitX(), Vec3::UnitY()};
  const double theta = std::acos(std::clamp(k.z() / kk, -1.0, 1.0));
  const double phi = std::atan2(k.y(), k.x());
  const Vec3 e1(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta));
  const Vec3 e2(-std::sin(phi), std::cos(phi), 0.0);
  return {e1, e2};
}

ModeIndex ModeIndex::make(const Vec3& k, int lambda) {
  if (lambda != 1 && lambda != 2) throw std::invalid_argument("polarization index must be 1 or 2");
  ModeIndex m;
  m.k = k;
  m.omega = k.norm();
  m.lambda = lambda;
  const auto [e1, e2] = polarization_basis(k);
  m.epsilon = lambda == 1 ? e1 : e2;
  m.theta_k = m.omega == 0.0 ? 0.0 : std::acos(std::clamp(k.z() / m.omega, -1.0, 1.0));
  return m;
}

namespace {

std::vector<double> bessel_all(int l_max, double x) {
  std::vector<double> j(l_max + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (x < 1.0) {
    double lead = 1.0;
    for (int l = 0; l <= l_max; ++l) {
      if (l > 0) lead *= x / (2.0 * l + 1.0);
      double term = 1.0;
      double sum = 1.0;
      for (int k = 1; k < 60; ++k) {
        term *= -0.5 * x * x / (k * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      j[l] = lead * sum;
    }
    return j;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  if (l_max <= x) {
    j[0] = s / x;
    if (l_max >= 1) j[1] = s / (x * x) - c / x;
    for (int l = 1; l < l_max; ++l) j[l + 1] = (2.0 * l + 1.0) / x * j[l] - j[l - 1];
    return j;
  }
  const int start = l_max + 20 + static_cast<int>(x);
  double up = 0.0;
  double cur = 1e-300;
  for (int n = start; n >= 1; --n) {
    const double down = (2.0 * n + 1.0) / x * cur - up;
    up = cur;
    cur = down;
    if (n - 1 <= l_max) j[n - 1] = cur;
    if (n <= l_max) j[n] = up;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      up *= 1e-250;
      for (int q = n - 1; q <= l_max; ++q) if (q >= 0) j[q] *= 1e-250;
    }
  }
  const double j0 = s / x;
  const double j1 = s / (x * x) - c / x;
  const double scale = std::abs(j0) > std::abs(j1) ? j0 / j[0] : j1 / j[1];
  for (double& v : j) v *= scale;
  return j;
}

}  // namespace

double spherical_bessel(int l, double x) {
  if (l < 0) throw std::invalid_argument("spherical Bessel order must be nonnegative");
  if (x < 0.0) throw std::invalid_argument("spherical Bessel argument must be nonnegative");
  return bessel_all(l, x)[l];
}

std::vector<double> planewave_expand(double k_mag, double r, int l_max) {
  if (k_mag < 0.0 || r < 0.0) throw std::invalid_argument("plane-wave expansion needs k >= 0 and r >= 0");
  if (l_max < 0) throw std::invalid_argument("l_max must be nonnegative");
  return bessel_all(l_max, k_mag * r);
}

CVec3 spherical_to_cartesian(const std::complex<double>& vm, const std::complex<double>& v0,
                             const std::complex<double>& vp) {
  const double r2 = std::sqrt(0.5);
  const std::complex<double> i(0.0, 1.0);
  return CVec3((vm - vp) * r2, i * (vm + vp) * r2, v0);
}

PartialWaveExpansion::PartialWaveExpansion(const AtomicState& final_state, const AtomicState& initial,
                                           Operator op, int l_max)
    : final_(final_state), initial_(initial), op_(op) {
  if (!final_state.same_atom(initial)) throw std::invalid_argument("states belong to different atoms");
  const int lf = final_state.l;
  const int li = initial.l;
  const int bound = lf + li + 1;
  l_max_ = l_max < 0 ? bound : l_max;

  std::map<std::pair<int, int>, int> radial_index;
  for (int q = -1; q <= 1; ++q) {
    const int M = initial.m + q;
    for (int ch = 0; ch < 2; ++ch) {
      const int L = ch == 0 ? li + 1 : li - 1;
      if (L < 0 || std::abs(M) > L) continue;
      double a = 0.0;
      if (op == Operator::Gradient) {
        a = ch == 0 ? std::sqrt((li + 1.0) / (2.0 * li + 3.0)) * clebsch_gordan(li, initial.m, 1, q, L, M)
                    : -std::sqrt(li / (2.0 * li - 1.0)) * clebsch_gordan(li, initial.m, 1, q, L, M);
      } else {
        a = std::sqrt((2.0 * li + 1.0) / (2.0 * L + 1.0)) * clebsch_gordan(li, 0, 1, 0, L, 0) *
            clebsch_gordan(li, initial.m, 1, q, L, M);
      }
      if (a == 0.0) continue;
      const int mu = final_state.m - M;
      for (int lam = std::abs(lf - L); lam <= std::min(lf + L, l_max_); ++lam) {
        if (std::abs(mu) > lam) continue;
        const double g = gaunt(lf, final_state.m, lam, mu, L, M);
        if (g == 0.0) continue;
        const auto key = std::make_pair(ch, lam);
        auto it = radial_index.find(key);
        if (it == radial_index.end()) {
          it = radial_index.emplace(key, static_cast<int>(radial_.size())).first;
          radial_.push_back({ch, lam});
        }
        terms_.push_back({q, ch, lam, mu, 4.0 * kPi * a * g, it->second});
      }
    }
  }
}

std::vector<double> PartialWaveExpansion::radial_integrals(double k_mag, double* err) const {
  if (k_mag < 0.0) throw std::invalid_argument("wavevector magnitude must be nonnegative");
  const double s = initial_.Z * initial_.mu_e * kAlpha;  // Z / a0
  const double kappa = k_mag / s;
  const int nf = final_.n, lf = final_.l, ni = initial_.n, li = initial_.l;
  const double decay = 1.0 / nf + 1.0 / ni;
  const double rho_max = std::max(40.0, 70.0 / decay);
  std::vector<double> out(radial_.size(), 0.0);
  for (size_t c = 0; c < radial_.size(); ++c) {
    const auto [ch, lam] = radial_[c];
    auto g = [&, ch = ch](double rho) {
      const double R = scaled_radial(ni, li, rho);
      if (op_ == Operator::Position) return rho * R;
      const double dR = scaled_radial_derivative(ni, li, rho);
      const double x = std::max(rho, 1e-300);
      return ch == 0 ? dR - li * R / x : dR + (li + 1.0) * R / x;
    };
    QuadratureRequest req;
    req.integrand = [&, lam = lam](double rho) {
      return scaled_radial(nf, lf, rho) * g(rho) * spherical_bessel(lam, kappa * rho) * rho * rho;
    };
    req.a = 0.0;
    req.b = rho_max;
    req.abs_tol = 1e-14;
    req.rel_tol = 1e-13;
    req.max_subdivisions = 2000;
    if (kappa * rho_max > 8.0 * kPi) req.oscillation_period = kPi / kappa;
    const auto r = require_converged(integrate(req), "radial matrix element");
    const double tail = std::abs(req.integrand(rho_max)) * 2.0 / decay;
    if (err) *err += r.error + tail;
    out[c] = (op_ == Operator::Position ? 1.0 / s : s) * r.value;
  }
  return out;
}

CVec3 PartialWaveExpansion::evaluate(const Vec3& k, int sign, const std::vector<double>& radial) const {
  if (sign != 1 && sign != -1) throw std::invalid_argument("plane-wave sign must be +1 or -1");
  const double kk = k.norm();
  const double theta = kk == 0.0 ? 0.0 : std::acos(std::clamp(k.z() / kk, -1.0, 1.0));
  const double phi = kk == 0.0 ? 0.0 : std::atan2(k.y(), k.x());
  std::complex<double> comp[3] = {};
  const std::complex<double> si(0.0, static_cast<double>(sign));
  for (const auto& t : terms_) {
    const double I = radial[t.radial_index];
    if (I == 0.0) continue;
    std::complex<double> phase = 1.0;
    for (int p = 0; p < t.lambda; ++p) phase *= si;
    comp[t.component + 1] += t.angular * phase * I * std::conj(spherical_harmonic(t.lambda, t.mu, theta, phi));
  }
  return spherical_to_cartesian(comp[0], comp[1], comp[2]);
}

CVec3 PartialWaveExpansion::operator()(const Vec3& k, int sign) const {
  return evaluate(k, sign, radial_integrals(k.norm()));
}

const PartialWaveExpansion& expansion(const AtomicState& final_state, const AtomicState& initial, Operator op) {
  using Key = std::tuple<int, int, int, int, int, int, double, double, int>;
  static std::shared_mutex mtx;
  static std::map<Key, std::unique_ptr<PartialWaveExpansion>> cache;
  const Key key{final_state.n, final_state.l, final_state.m, initial.n, initial.l,
                initial.m,     initial.Z,     initial.mu_e,  static_cast<int>(op)};
  {
    std::shared_lock lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<PartialWaveExpansion>(final_state, initial, op);
  std::unique_lock lock(mtx);
  auto& slot = cache[key];
  if (!slot) slot = std::move(built);
  return *slot;
}

CVec3 momentum_element(const AtomicState& final_state, const AtomicState& initial, const ModeIndex& mode,
                       int sign) {
  return expansion(final_state, initial, Operator::Gradient)(mode.k, sign);
}

CVec3 position_element(const AtomicState& final_state, const AtomicState& initial, const ModeIndex& mode,
                       int sign) {
  return expansion(final_state, initial, Operator::Position)(mode.k, sign);
}

double envelope_1s2p(double omega, double Z, double mu_e) {
  const double a = 1.0 / (mu_e * kAlpha);
  const double x = a * omega / Z;
  return 1.0 + 4.0 * x * x / 9.0;
}

double form_factor_1s2p(double omega, double Z, Coupling coupling, double mu_e) {
  if (omega < 0.0) throw std::invalid_argument("frequency must be nonnegative");
  if (!(Z > 0.0) || !(mu_e > 0.0)) throw std::invalid_argument("Z and mu_e must be positive");
  const double length = 1.0 / (mu_e * kAlpha * Z);
  const double env = envelope_1s2p(omega, Z, mu_e);
  const double p = coupling == Coupling::Dipole ? 3.0 : 2.0;
  return 128.0 * std::sqrt(2.0) / 243.0 * length / std::pow(env, p);
}

double kernel_1s2p(double omega, double Z, Coupling coupling, double mu_e) {
  const double q = std::sqrt(4.0 * kPi * kAlpha);
  return q * std::pow(2.0 * kPi, -1.5) * std::sqrt(0.5 * omega) * form_factor_1s2p(omega, Z, coupling, mu_e);
}

bool is_1s2p_pair(const AtomicState& a, const AtomicState& b) {
  auto is1s = [](const AtomicState& s) { return s.n == 1; };
  auto is2p = [](const AtomicState& s) { return s.n == 2 && s.l == 1; };
  return a.same_atom(b) && ((is1s(a) && is2p(b)) || (is2p(a) && is1s(b)));
}

}  // namespace gaugecmp
