#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gaugecmp/kernels.hpp"
#include "gaugecmp/quadrature.hpp"

namespace gaugecmp {

struct Vacuum {};

struct CoherentGaussianPulse {
  Vec3 k0 = Vec3::UnitX();
  Vec3 sigma = Vec3::Constant(0.01);
  int lambda0 = 1;
  double Tstar = 0.0;
  double amplitude_scale = 1.0;

  void validate() const;
  // L2-normalized profile times amplitude_scale; zero for lambda != lambda0
  std::complex<double> profile(const Vec3& k, int lambda) const;
};

using FieldPreparation = std::variant<Vacuum, CoherentGaussianPulse>;

// prefactor * u^3 (1 + c u^2)^{-m} sin^2((u+Omega)T/2) / ((u+Omega)/2)^2 with u = omega a0 / Z.
struct SpectralKernel {
  int geometry_exponent = 4;
  double prefactor = 0.0;
  double Omega = 0.0;  // in units of Z/a0
  double T = 0.0;      // in units of a0/Z
  std::optional<double> Lambda;  // in units of Z/a0
  double envelope = 4.0 / 9.0;

  std::complex<double> density(std::complex<double> u) const;
  double integrand(double u) const;
};

// 1s<->2p kernel for the given coupling; Omega, T and Lambda converted to scaled units.
SpectralKernel spectral_kernel_1s2p(const TransitionSpec& spec, double T);

struct ProbabilityResult {
  double P0 = 0.0;
  double Pphi = 0.0;
  double total = 0.0;
  double quad_error = 0.0;
  std::vector<std::string> warnings;
};

enum class SpectralRoute { Auto, ClosedForm, ModeSum };

struct ProbabilityOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-24;
  double u_max = 200.0;
  SpectralRoute route = SpectralRoute::Auto;
  int chebyshev_order = 48;
  int angular_order = 16;
  unsigned workers = 1;
};

// D(omega)/omega^3 of the mode-summed |h2|^2 in the scaled variable, interpolated in y = u/(1+u).
class ModeSumDensity {
 public:
  ModeSumDensity(const TransitionSpec& spec, double u_upper, const ProbabilityOptions& opts);
  // density in scaled units, analytic continuation through the interpolant
  std::complex<double> operator()(std::complex<double> u) const;
  double fit_error() const { return fit_error_; }

 private:
  ChebyshevSeries series_;
  double fit_error_ = 0.0;
};

// Mode-summed density at one scaled frequency by angular quadrature.
double mode_sum_density_at(const TransitionSpec& spec, double u, int angular_order);

ProbabilityResult vacuum_probability(const TransitionSpec& spec, double T, const ProbabilityOptions& opts = {});
ProbabilityResult vacuum_probability(const TransitionSpec& spec, const ProbabilityOptions& opts = {});
ProbabilityResult asymptotic_vacuum_probability(const TransitionSpec& spec, const ProbabilityOptions& opts = {});

ProbabilityResult emission_probability(const TransitionSpec& spec, double T, const ProbabilityOptions& opts = {});
// per natural time unit
double emission_rate(const TransitionSpec& spec, const ProbabilityOptions& opts = {});
double emission_rate_si(const TransitionSpec& spec, const ProbabilityOptions& opts = {});
// 4 a0^2 Omega^2 / (9 Z^2) for the transition gap
double envelope_constant(const TransitionSpec& spec);

// Geometry factor replaced by 1; identical for both couplings.
ProbabilityResult dipole_limit_probability(const TransitionSpec& spec, double T, double omega_max,
                                           const ProbabilityOptions& opts = {});
// Constant in front of int omega^3 sin^2(...)/(...)^2 domega, converted to s^2.
double dipole_limit_prefactor_si(const TransitionSpec& spec);

struct CoherentOptions {
  double box_sigmas = 6.0;
  int gauss_order = 8;
  double rel_change = 1e-6;
  int max_refinements = 6;
  unsigned workers = 1;
  bool include_vacuum = true;
  ProbabilityOptions vacuum;
};

ProbabilityResult coherent_Pphi(const TransitionSpec& spec, const CoherentGaussianPulse& pulse, double T,
                                const CoherentOptions& opts = {});

ProbabilityResult probability(const TransitionSpec& spec, double T, const FieldPreparation& field,
                              const CoherentOptions& opts = {});

struct CutoffPoint {
  double Lambda = 0.0;  // units of Z/a0
  double P_dip = 0.0;
  double P_min = 0.0;
  double difference = 0.0;
  double quad_error = 0.0;
};

// T <= 0 or infinite selects the dephased long-time limit.
std::vector<CutoffPoint> cutoff_sweep(const TransitionSpec& spec, double T, const std::vector<double>& lambdas,
                                      const ProbabilityOptions& opts = {});

// Sum over final magnetic sublevels m_f of a fixed (n_f, l_f).
ProbabilityResult vacuum_probability_m_summed(const TransitionSpec& spec, double T,
                                              const ProbabilityOptions& opts = {});

}  // namespace gaugecmp
