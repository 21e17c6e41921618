#pragma once

#include <complex>
#include <vector>

#include "gaugecmp/constants.hpp"

namespace gaugecmp {

// Bound state |n, l, m> of a hydrogen-like ion with nuclear charge Z.
struct AtomicState {
  int n = 1;
  int l = 0;
  int m = 0;
  double Z = 1.0;
  double mu_e = 1.0;

  AtomicState() = default;
  AtomicState(int n, int l, int m, double Z = 1.0, double mu_e = 1.0);

  double energy() const;
  // a0 / Z: the natural length scale of the state
  double length_scale() const;
  bool same_atom(const AtomicState& other) const;
};

double energy(int n, double Z, double mu_e = 1.0);
// E_f - E_i
double gap(const AtomicState& initial, const AtomicState& final_state);
double gap(int n_i, int n_f, double Z, double mu_e = 1.0);

// Radial function R_nl in the scaled variable rho = Z r / a0, normalized
// so that int R^2 rho^2 drho = 1.
double scaled_radial(int n, int l, double rho);
double scaled_radial_derivative(int n, int l, double rho);

class RadialFunction {
 public:
  RadialFunction(int n, int l, double Z, double mu_e = 1.0);

  double operator()(double r) const;
  double derivative(double r) const;

  int n() const { return n_; }
  int l() const { return l_; }
  double scale() const { return scale_; }

 private:
  int n_;
  int l_;
  double scale_;  // Z / a0
};

RadialFunction radial(int n, int l, double Z, double mu_e = 1.0);

// Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);
std::complex<double> spherical_harmonic(int l, int m, double x, double y, double z);

// Integer angular momenta only.
double clebsch_gordan(int l1, int m1, int l2, int m2, int L, int M);

// int Y*_{l1 m1} Y_{l2 m2} Y_{l3 m3} dOmega
double gaunt(int l1, int m1, int l2, int m2, int l3, int m3);

}  // namespace gaugecmp
