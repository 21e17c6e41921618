#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "gaugecmp/matrix_elements.hpp"
#include "gaugecmp/quadrature.hpp"

namespace gaugecmp {

struct SwitchingProfile {
  double T = 0.0;
  std::optional<double> Lambda;  // hard cutoff on omega, natural units

  void validate() const;
};

struct TransitionSpec {
  AtomicState initial;
  AtomicState final_state;
  Coupling coupling = Coupling::Minimal;
  SwitchingProfile switching;

  double gap() const;  // E_f - E_i
  double Z() const { return initial.Z; }
  double mu_e() const { return initial.mu_e; }
  void validate() const;
};

TransitionSpec make_transition(const AtomicState& initial, const AtomicState& final_state, Coupling coupling,
                               double T = 0.0, std::optional<double> Lambda = std::nullopt);

// h1 multiplies the annihilation operator, h2 the creation operator.
struct ModeAmplitude {
  std::complex<double> h1;
  std::complex<double> h2;
};

enum class Branch { Annihilation, Creation };

// T e^{i x} sinc(x), x = (Omega - omega) T / 2 for Annihilation and (Omega + omega) T / 2 for Creation.
std::complex<double> switching_sinc(double Omega, double omega, double T, Branch branch);
double sinc(double x);

struct DressedCoefficient {
  std::complex<double> annihilation;
  std::complex<double> creation;
};

// Per-mode dressing coefficient L_lk for l = initial, k = final (field mode normalization included).
DressedCoefficient dressed_L(const AtomicState& final_state, const AtomicState& initial, const ModeIndex& mode,
                             Coupling coupling);

// (2 pi)^{-3/2} / sqrt(2 omega)
double mode_normalization(double omega);

// Projected elements eps . <f| e^{sign i k.x} O |i>, O = grad (minimal) or x (dipole).
class AmplitudeModel {
 public:
  explicit AmplitudeModel(const TransitionSpec& spec, double k_max = 0.0);

  std::complex<double> projected(const ModeIndex& mode, int sign) const;
  CVec3 element(const Vec3& k, int sign) const;
  ModeAmplitude operator()(const ModeIndex& mode, double T, bool global_phase = false) const;

  const TransitionSpec& spec() const { return spec_; }
  bool closed_form() const { return closed_form_; }

 private:
  std::vector<double> radial(double k_mag) const;

  TransitionSpec spec_;
  bool closed_form_ = false;
  const PartialWaveExpansion* expansion_ = nullptr;
  std::vector<ChebyshevSeries> interpolants_;
  double k_max_ = 0.0;
};

ModeAmplitude mode_amplitude(const TransitionSpec& spec, const ModeIndex& mode, double T,
                             bool global_phase = false);

}  // namespace gaugecmp
