#pragma once

#include <numbers>

namespace gaugecmp {

// Natural units: hbar = c = eps0 = 1, energies in units of the electron mass.
inline constexpr double kAlpha = 7.2973525693e-3;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHbarEvS = 6.582119569e-16;
inline constexpr double kElectronMassEv = 0.51099895000e6;
inline constexpr double kProtonElectronMassRatio = 1836.15267343;

struct PhysicalConstants {
  double alpha = kAlpha;
  double mu_e = 1.0;
  // seconds per natural time unit hbar/(mu_e m_e c^2); defaults to hydrogen reduced mass
  double si_time_unit = kHbarEvS / (kElectronMassEv * kProtonElectronMassRatio /
                                     (1.0 + kProtonElectronMassRatio));

  double a0() const { return 1.0 / (mu_e * alpha); }
  double charge_squared() const { return 4.0 * kPi * alpha; }
  double si_energy_unit_ev() const { return kHbarEvS / si_time_unit; }
};

}  // namespace gaugecmp
