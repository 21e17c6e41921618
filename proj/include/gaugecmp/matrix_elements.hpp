#pragma once

#include <Eigen/Core>
#include <complex>
#include <utility>
#include <vector>

#include "gaugecmp/hydrogenic.hpp"

namespace gaugecmp {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

enum class Coupling { Minimal, Dipole };

const char* to_string(Coupling c);

// Transverse polarizations: lambda = 1 along theta-hat of k, lambda = 2 along phi-hat.
struct ModeIndex {
  Vec3 k = Vec3::Zero();
  double omega = 0.0;
  int lambda = 1;
  Vec3 epsilon = Vec3::UnitX();
  double theta_k = 0.0;

  static ModeIndex make(const Vec3& k, int lambda);
};

std::pair<Vec3, Vec3> polarization_basis(const Vec3& k);

double spherical_bessel(int l, double x);
std::vector<double> planewave_expand(double k_mag, double r, int l_max);

enum class Operator { Gradient, Position };

// <f| e^{sign i k.x} O |i> reduced to a finite sum over plane-wave partial waves:
// sum_terms coeff (sign i)^lambda I_{channel,lambda}(|k|) conj(Y_{lambda mu}(k-hat)).
class PartialWaveExpansion {
 public:
  struct Term {
    int component;  // spherical component q of the vector operator
    int channel;    // 0: L = l_i + 1, 1: L = l_i - 1
    int lambda;
    int mu;
    double angular;
    int radial_index;
  };
  struct Radial {
    int channel;
    int lambda;
  };

  PartialWaveExpansion(const AtomicState& final_state, const AtomicState& initial, Operator op,
                       int l_max = -1);

  int l_max() const { return l_max_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<Radial>& radial_channels() const { return radial_; }
  Operator op() const { return op_; }

  // Radial integrals in natural units at |k|; error estimates accumulated into err if given.
  std::vector<double> radial_integrals(double k_mag, double* err = nullptr) const;
  CVec3 evaluate(const Vec3& k, int sign, const std::vector<double>& radial) const;
  CVec3 operator()(const Vec3& k, int sign) const;

 private:
  AtomicState final_;
  AtomicState initial_;
  Operator op_;
  int l_max_;
  std::vector<Term> terms_;
  std::vector<Radial> radial_;
};

// Shared read-mostly cache of expansions.
const PartialWaveExpansion& expansion(const AtomicState& final_state, const AtomicState& initial,
                                      Operator op);

// <f| e^{sign i k.x} grad |i>
CVec3 momentum_element(const AtomicState& final_state, const AtomicState& initial, const ModeIndex& mode,
                       int sign);
// <f| e^{sign i k.x} x |i>
CVec3 position_element(const AtomicState& final_state, const AtomicState& initial, const ModeIndex& mode,
                       int sign);

// Transverse 1s<->2p form factor expressed as a dipole length:
// (128 sqrt2 / 243) (a0/Z) / (1 + 4 a0^2 w^2 / (9 Z^2))^p, p = 3 dipole, 2 minimal.
double form_factor_1s2p(double omega, double Z, Coupling coupling, double mu_e = 1.0);
// Angular-reduced single-mode amplitude: |h| = |T sinc| sin(theta_k) kernel_1s2p.
double kernel_1s2p(double omega, double Z, Coupling coupling, double mu_e = 1.0);
// 1 + 4 a0^2 w^2 / (9 Z^2)
double envelope_1s2p(double omega, double Z, double mu_e = 1.0);

bool is_1s2p_pair(const AtomicState& a, const AtomicState& b);

// Cartesian vector from spherical components indexed q = -1, 0, +1.
CVec3 spherical_to_cartesian(const std::complex<double>& vm, const std::complex<double>& v0,
                             const std::complex<double>& vp);

}  // namespace gaugecmp
