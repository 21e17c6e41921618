#include "gaugecmp/probability.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "gaugecmp/parallel.hpp"

namespace gaugecmp {

namespace {

// Z / a0
double inverse_length(const TransitionSpec& spec) { return spec.Z() * spec.mu_e() * kAlpha; }

std::complex<double> ipow(std::complex<double> z, int m) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < m; ++i) r *= z;
  return r;
}

// (8 pi / 3) q^2 / (2 (2 pi)^3) times the squared 1s-2p dipole length in units of a0/Z.
double prefactor_1s2p() {
  const double length = 128.0 * std::sqrt(2.0) / 243.0;
  const double q2 = 4.0 * kPi * kAlpha;
  return (8.0 * kPi / 3.0) * q2 / (2.0 * std::pow(2.0 * kPi, 3)) * length * length;
}

void check_vacuum_spec(const TransitionSpec& spec) {
  spec.validate();
  if (spec.gap() == 0.0) throw std::invalid_argument("vacuum probability needs nondegenerate levels");
}

bool use_closed_form(const TransitionSpec& spec, SpectralRoute route) {
  if (route == SpectralRoute::ModeSum) return false;
  const bool ok = is_1s2p_pair(spec.initial, spec.final_state);
  if (route == SpectralRoute::ClosedForm && !ok)
    throw std::invalid_argument("closed-form route only covers 1s<->2p transitions");
  return ok;
}

double upper_limit(const TransitionSpec& spec, const ProbabilityOptions& opts) {
  double U = opts.u_max;
  if (spec.switching.Lambda) U = std::min(U, *spec.switching.Lambda / inverse_length(spec));
  return U;
}

bool truncated(const TransitionSpec& spec, const ProbabilityOptions& opts) {
  return !spec.switching.Lambda || *spec.switching.Lambda / inverse_length(spec) > opts.u_max;
}

// rough tail estimate for a density decaying at least like u^{-5}
double generic_tail(double g_at_U, double U, bool dephased, double T) {
  const double osc = dephased ? 2.0 : 4.0;
  double t = osc * std::abs(g_at_U) / (6.0 * U);
  if (!dephased) t = std::min(t, T * T * std::abs(g_at_U) * U / 4.0);
  return t;
}

}  // namespace

void CoherentGaussianPulse::validate() const {
  for (int j = 0; j < 3; ++j)
    if (!(sigma[j] > 0.0)) throw std::invalid_argument("pulse widths must be positive");
  if (lambda0 != 1 && lambda0 != 2) throw std::invalid_argument("pulse polarization must be 1 or 2");
  if (!(amplitude_scale >= 0.0)) throw std::invalid_argument("pulse amplitude_scale must be >= 0");
}

std::complex<double> CoherentGaussianPulse::profile(const Vec3& k, int lambda) const {
  if (lambda != lambda0) return 0.0;
  double e = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double d = k[j] - k0[j];
    e += d * d / (4.0 * sigma[j] * sigma[j]);
  }
  const double norm = std::pow(2.0 * kPi, -0.75) / std::sqrt(sigma[0] * sigma[1] * sigma[2]);
  return amplitude_scale * norm * std::exp(-e) * std::polar(1.0, k.norm() * Tstar);
}

std::complex<double> SpectralKernel::density(std::complex<double> u) const {
  return prefactor * u * u * u / ipow(1.0 + envelope * u * u, geometry_exponent);
}

double SpectralKernel::integrand(double u) const {
  if (Lambda && u > *Lambda) return 0.0;
  const double x = 0.5 * (u + Omega) * T;
  const double s = sinc(x);
  return density(u).real() * T * T * s * s;
}

SpectralKernel spectral_kernel_1s2p(const TransitionSpec& spec, double T) {
  spec.validate();
  if (!is_1s2p_pair(spec.initial, spec.final_state))
    throw std::invalid_argument("spectral kernel closed form only covers 1s<->2p transitions");
  const double s = inverse_length(spec);
  SpectralKernel k;
  k.geometry_exponent = spec.coupling == Coupling::Minimal ? 4 : 6;
  k.prefactor = prefactor_1s2p();
  k.Omega = spec.gap() / s;
  k.T = T * s;
  if (spec.switching.Lambda) k.Lambda = *spec.switching.Lambda / s;
  return k;
}

double mode_sum_density_at(const TransitionSpec& spec, double u, int angular_order) {
  spec.validate();
  if (u < 0.0) throw std::invalid_argument("frequency must be nonnegative");
  if (u == 0.0) return 0.0;
  const double s = inverse_length(spec);
  const double w = s * u;
  const double W = spec.gap();
  const double mu = spec.mu_e();
  const Operator op = spec.coupling == Coupling::Minimal ? Operator::Gradient : Operator::Position;
  const auto& ex = expansion(spec.final_state, spec.initial, op);
  const auto radial = ex.radial_integrals(w);
  const double q = std::sqrt(4.0 * kPi * kAlpha);
  const double c0 = mode_normalization(w);
  double factor = 0.0;
  if (spec.coupling == Coupling::Minimal)
    factor = W != 0.0 ? q * c0 * w / (mu * W) : q * c0 / mu;
  else
    factor = q * c0 * w;

  const auto& gl = gauss_legendre(angular_order);
  const int nphi = 2 * angular_order;
  std::vector<double> parts;
  parts.reserve(gl.nodes.size());
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    const double ct = gl.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double ring = 0.0;
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * j / nphi;
      const Vec3 k(w * st * std::cos(phi), w * st * std::sin(phi), w * ct);
      const CVec3 v = ex.evaluate(k, -1, radial);
      const auto [e1, e2] = polarization_basis(k);
      ring += std::norm(e1.cast<std::complex<double>>().dot(v)) + std::norm(e2.cast<std::complex<double>>().dot(v));
    }
    parts.push_back(gl.weights[i] * ring * 2.0 * kPi / nphi);
  }
  const double angular = compensated_sum(parts);
  return w * w * factor * factor * angular / s;
}

ModeSumDensity::ModeSumDensity(const TransitionSpec& spec, double u_upper, const ProbabilityOptions& opts) {
  const double y_max = u_upper / (1.0 + u_upper);
  for (int order = opts.chebyshev_order; order <= 4 * opts.chebyshev_order; order *= 2) {
    const auto y = ChebyshevSeries::nodes(0.0, y_max, order);
    std::vector<double> h(order);
    parallel_for_indexed(y.size(), opts.workers, [&](std::size_t j) {
      const double u = y[j] / (1.0 - y[j]);
      h[j] = mode_sum_density_at(spec, u, opts.angular_order) / (u * u * u);
    });
    series_ = ChebyshevSeries::from_values(h, 0.0, y_max);
    fit_error_ = series_.tail_ratio();
    if (fit_error_ < 1e-12) break;
  }
}

std::complex<double> ModeSumDensity::operator()(std::complex<double> u) const {
  const std::complex<double> y = u / (1.0 + u);
  return u * u * u * series_(y);
}

ProbabilityResult vacuum_probability(const TransitionSpec& spec, double T, const ProbabilityOptions& opts) {
  check_vacuum_spec(spec);
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("duration must be finite and >= 0");
  ProbabilityResult r;
  if (T == 0.0) return r;
  const double s = inverse_length(spec);
  const double U = upper_limit(spec, opts);
  const double Wu = spec.gap() / s;
  const double Tu = T * s;

  SincSquaredIntegral in;
  in.Omega = Wu;
  in.T = Tu;
  in.upper = U;
  in.abs_tol = opts.abs_tol;
  in.rel_tol = opts.rel_tol;
  double tail = 0.0;
  if (use_closed_form(spec, opts.route)) {
    const SpectralKernel k = spectral_kernel_1s2p(spec, T);
    in.density = [k](std::complex<double> u) { return k.density(u); };
    if (truncated(spec, opts)) tail = k.prefactor * tail_bound(k.geometry_exponent, Wu, Tu, U);
  } else {
    auto dens = std::make_shared<ModeSumDensity>(spec, U, opts);
    in.density = [dens](std::complex<double> u) { return (*dens)(u); };
    if (truncated(spec, opts)) tail = generic_tail((*dens)(U).real(), U, false, Tu);
  }
  const auto q = integrate_sinc_squared(in);
  r.P0 = q.value;
  r.total = r.P0;
  r.quad_error = q.error + tail;
  if (!q.converged) r.warnings.push_back("spectral quadrature did not reach tolerance");
  return r;
}

ProbabilityResult vacuum_probability(const TransitionSpec& spec, const ProbabilityOptions& opts) {
  return vacuum_probability(spec, spec.switching.T, opts);
}

ProbabilityResult asymptotic_vacuum_probability(const TransitionSpec& spec, const ProbabilityOptions& opts) {
  check_vacuum_spec(spec);
  if (!(spec.gap() > 0.0)) throw std::invalid_argument("long-time asymptote needs an excitation (Omega > 0)");
  const double s = inverse_length(spec);
  const double U = upper_limit(spec, opts);
  const double Wu = spec.gap() / s;
  std::function<double(double)> g;
  double tail = 0.0;
  if (use_closed_form(spec, opts.route)) {
    const SpectralKernel k = spectral_kernel_1s2p(spec, 0.0);
    g = [k](double u) { return k.density(u).real(); };
    if (truncated(spec, opts)) tail = k.prefactor * dephased_tail_bound(k.geometry_exponent, Wu, U);
  } else {
    auto dens = std::make_shared<ModeSumDensity>(spec, U, opts);
    g = [dens](double u) { return (*dens)(std::complex<double>(u, 0.0)).real(); };
    if (truncated(spec, opts)) tail = generic_tail(g(U), U, true, 0.0);
  }
  QuadratureRequest req;
  req.integrand = [&](double u) {
    const double eta = u + Wu;
    return 2.0 * g(u) / (eta * eta);
  };
  req.a = 0.0;
  req.b = U;
  req.abs_tol = opts.abs_tol;
  req.rel_tol = opts.rel_tol;
  req.max_subdivisions = 20000;
  const auto q = integrate(req);
  ProbabilityResult r;
  r.P0 = q.value;
  r.total = r.P0;
  r.quad_error = q.error + tail;
  if (!q.converged) r.warnings.push_back("asymptotic quadrature did not reach tolerance");
  return r;
}

ProbabilityResult emission_probability(const TransitionSpec& spec, double T, const ProbabilityOptions& opts) {
  spec.validate();
  if (!(spec.gap() < 0.0)) throw std::invalid_argument("emission needs Omega < 0");
  return vacuum_probability(spec, T, opts);
}

double emission_rate(const TransitionSpec& spec, const ProbabilityOptions& opts) {
  spec.validate();
  if (!(spec.gap() < 0.0)) throw std::invalid_argument("emission rate needs Omega < 0");
  const double s = inverse_length(spec);
  const double u = -spec.gap() / s;
  double g = 0.0;
  if (use_closed_form(spec, opts.route))
    g = spectral_kernel_1s2p(spec, 0.0).density(u).real();
  else
    g = mode_sum_density_at(spec, u, opts.angular_order);
  // sin^2(eta T/2)/(eta/2)^2 -> 2 pi T delta(eta)
  return 2.0 * kPi * s * g;
}

double emission_rate_si(const TransitionSpec& spec, const ProbabilityOptions& opts) {
  return emission_rate(spec, opts) / PhysicalConstants{}.si_time_unit;
}

double envelope_constant(const TransitionSpec& spec) {
  const double a0 = 1.0 / (spec.mu_e() * kAlpha);
  const double W = spec.gap();
  return 4.0 * a0 * a0 * W * W / (9.0 * spec.Z() * spec.Z());
}

ProbabilityResult dipole_limit_probability(const TransitionSpec& spec, double T, double omega_max,
                                           const ProbabilityOptions& opts) {
  check_vacuum_spec(spec);
  if (!(omega_max > 0.0)) throw std::invalid_argument("omega_max must be positive");
  const double s = inverse_length(spec);
  const double U = omega_max / s;
  ProbabilityResult r;
  if (U > 0.1) r.warnings.push_back("omega_max exceeds 0.1 Z/a0; dipole-limit truncation is not small");
  if (T == 0.0) return r;
  double pref = 0.0;
  if (is_1s2p_pair(spec.initial, spec.final_state)) {
    pref = prefactor_1s2p();
  } else {
    TransitionSpec d = spec;
    d.coupling = Coupling::Dipole;
    const double u0 = 1e-6;
    pref = mode_sum_density_at(d, u0, opts.angular_order) / (u0 * u0 * u0);
  }
  SincSquaredIntegral in;
  in.density = [pref](std::complex<double> u) { return pref * u * u * u; };
  in.Omega = spec.gap() / s;
  in.T = T * s;
  in.upper = U;
  in.abs_tol = opts.abs_tol;
  in.rel_tol = opts.rel_tol;
  const auto q = integrate_sinc_squared(in);
  r.P0 = q.value;
  r.total = r.P0;
  r.quad_error = q.error;
  return r;
}

double dipole_limit_prefactor_si(const TransitionSpec& spec) {
  const double length = 1.0 / inverse_length(spec);
  const double t = PhysicalConstants{}.si_time_unit;
  return prefactor_1s2p() * length * length * t * t;
}

ProbabilityResult coherent_Pphi(const TransitionSpec& spec, const CoherentGaussianPulse& pulse, double T,
                                const CoherentOptions& opts) {
  spec.validate();
  pulse.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("duration must be finite and >= 0");
  const double b = opts.box_sigmas;
  bool spans_origin = true;
  for (int j = 0; j < 3; ++j)
    if (std::abs(pulse.k0[j]) > b * pulse.sigma[j]) spans_origin = false;
  if (spans_origin) throw std::invalid_argument("pulse box reaches omega = 0; narrow sigma or move k0");

  ProbabilityResult r;
  if (opts.include_vacuum && spec.gap() != 0.0 && T > 0.0) {
    const auto v = vacuum_probability(spec, T, opts.vacuum);
    r.P0 = v.P0;
    r.quad_error += v.quad_error;
  }
  if (pulse.amplitude_scale == 0.0 || T == 0.0) {
    r.total = r.P0;
    return r;
  }

  const double kmax = pulse.k0.norm() + b * pulse.sigma.norm();
  const AmplitudeModel model(spec, kmax * 1.01);
  const auto& gl = gauss_legendre(opts.gauss_order);
  const int ng = opts.gauss_order;

  // phase of the integrand varies through omega = |k|; bound |d omega / d k_j| over the box
  const double kmin = std::max(pulse.k0.norm() - b * pulse.sigma.norm(), 1e-3 * pulse.k0.norm());
  std::array<int, 3> panels{};
  for (int j = 0; j < 3; ++j) {
    const double slope = std::min(1.0, (std::abs(pulse.k0[j]) + b * pulse.sigma[j]) / kmin);
    const double phase = 2.0 * b * pulse.sigma[j] * slope * (T + std::abs(pulse.Tstar));
    panels[j] = std::max(2, static_cast<int>(std::ceil(phase / kPi)));
  }

  auto amplitude = [&](const std::array<int, 3>& np) {
    std::array<std::vector<double>, 3> x, w;
    for (int j = 0; j < 3; ++j) {
      const double lo = pulse.k0[j] - b * pulse.sigma[j];
      const double h = 2.0 * b * pulse.sigma[j] / np[j];
      for (int p = 0; p < np[j]; ++p)
        for (int g = 0; g < ng; ++g) {
          x[j].push_back(lo + h * (p + 0.5 * (gl.nodes[g] + 1.0)));
          w[j].push_back(0.5 * h * gl.weights[g]);
        }
    }
    std::vector<std::complex<double>> slab(x[0].size());
    parallel_for_indexed(x[0].size(), opts.workers, [&](std::size_t i) {
      std::vector<double> re, im;
      re.reserve(x[1].size() * x[2].size());
      im.reserve(x[1].size() * x[2].size());
      for (size_t j = 0; j < x[1].size(); ++j)
        for (size_t k = 0; k < x[2].size(); ++k) {
          const Vec3 kv(x[0][i], x[1][j], x[2][k]);
          const ModeIndex mode = ModeIndex::make(kv, pulse.lambda0);
          const std::complex<double> G = pulse.profile(kv, pulse.lambda0);
          const ModeAmplitude h = model(mode, T);
          const std::complex<double> v = (h.h1 * G + h.h2 * std::conj(G)) * (w[1][j] * w[2][k]);
          re.push_back(v.real());
          im.push_back(v.imag());
        }
      slab[i] = w[0][i] * std::complex<double>(compensated_sum(re), compensated_sum(im));
    });
    std::vector<double> re, im;
    for (const auto& v : slab) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    return std::complex<double>(compensated_sum(re), compensated_sum(im));
  };

  std::complex<double> A = amplitude(panels);
  double P = std::norm(A);
  double change = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_refinements; ++it) {
    for (auto& p : panels) p *= 2;
    const std::complex<double> A2 = amplitude(panels);
    const double P2 = std::norm(A2);
    change = std::abs(P2 - P);
    A = A2;
    P = P2;
    if (change <= opts.rel_change * P) break;
  }
  if (change > opts.rel_change * P) r.warnings.push_back("coherent k-space integral did not reach tolerance");
  // amplitude mass of the Gaussian outside the box, per axis
  const double outside = 3.0 * std::erfc(b / 2.0);
  r.Pphi = P;
  r.quad_error += change + 2.0 * outside * P;
  r.total = r.P0 + r.Pphi;
  return r;
}

ProbabilityResult probability(const TransitionSpec& spec, double T, const FieldPreparation& field,
                              const CoherentOptions& opts) {
  if (std::holds_alternative<Vacuum>(field)) return vacuum_probability(spec, T, opts.vacuum);
  return coherent_Pphi(spec, std::get<CoherentGaussianPulse>(field), T, opts);
}

std::vector<CutoffPoint> cutoff_sweep(const TransitionSpec& spec, double T, const std::vector<double>& lambdas,
                                      const ProbabilityOptions& opts) {
  spec.validate();
  const double s = inverse_length(spec);
  const bool dephased = !(T > 0.0) || !std::isfinite(T);
  std::vector<CutoffPoint> out(lambdas.size());
  parallel_for_indexed(lambdas.size(), opts.workers, [&](std::size_t i) {
    if (!(lambdas[i] > 0.0)) throw std::invalid_argument("cutoff values must be positive");
    TransitionSpec dip = spec, min = spec;
    dip.coupling = Coupling::Dipole;
    min.coupling = Coupling::Minimal;
    dip.switching.Lambda = min.switching.Lambda = lambdas[i] * s;
    ProbabilityOptions o = opts;
    o.workers = 1;
    const auto pd = dephased ? asymptotic_vacuum_probability(dip, o) : vacuum_probability(dip, T, o);
    const auto pm = dephased ? asymptotic_vacuum_probability(min, o) : vacuum_probability(min, T, o);
    out[i] = {lambdas[i], pd.P0, pm.P0, pm.P0 - pd.P0, pd.quad_error + pm.quad_error};
  });
  return out;
}

ProbabilityResult vacuum_probability_m_summed(const TransitionSpec& spec, double T, const ProbabilityOptions& opts) {
  ProbabilityResult total;
  for (int m = -spec.final_state.l; m <= spec.final_state.l; ++m) {
    TransitionSpec s = spec;
    s.final_state.m = m;
    const auto r = vacuum_probability(s, T, opts);
    total.P0 += r.P0;
    total.quad_error += r.quad_error;
    total.warnings.insert(total.warnings.end(), r.warnings.begin(), r.warnings.end());
  }
  total.total = total.P0;
  return total;
}

}  // namespace gaugecmp
