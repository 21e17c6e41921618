#include "gaugecmp/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace gaugecmp {

void SwitchingProfile::validate() const {
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("switching duration T must be finite and >= 0");
  if (Lambda && !(*Lambda > 0.0)) throw std::invalid_argument("cutoff Lambda must be positive");
}

double TransitionSpec::gap() const { return gaugecmp::gap(initial, final_state); }

void TransitionSpec::validate() const {
  switching.validate();
  if (!initial.same_atom(final_state)) throw std::invalid_argument("initial and final states belong to different atoms");
  if (initial.n == final_state.n && initial.l == final_state.l && initial.m == final_state.m)
    throw std::invalid_argument("initial and final states coincide");
}

TransitionSpec make_transition(const AtomicState& initial, const AtomicState& final_state, Coupling coupling,
                               double T, std::optional<double> Lambda) {
  TransitionSpec s{initial, final_state, coupling, SwitchingProfile{T, Lambda}};
  s.validate();
  return s;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

std::complex<double> switching_sinc(double Omega, double omega, double T, Branch branch) {
  if (T < 0.0) throw std::invalid_argument("duration must be nonnegative");
  if (omega < 0.0) throw std::invalid_argument("frequency must be nonnegative");
  const double eta = branch == Branch::Annihilation ? Omega - omega : Omega + omega;
  const double x = 0.5 * eta * T;
  return T * std::polar(1.0, x) * sinc(x);
}

double mode_normalization(double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("mode frequency must be positive");
  return std::pow(2.0 * kPi, -1.5) / std::sqrt(2.0 * omega);
}

DressedCoefficient dressed_L(const AtomicState& final_state, const AtomicState& initial, const ModeIndex& mode,
                             Coupling coupling) {
  if (coupling == Coupling::Dipole) return {0.0, 0.0};
  const double dE = initial.energy() - final_state.energy();
  if (dE == 0.0) return {0.0, 0.0};
  const double c0 = mode_normalization(mode.omega);
  const CVec3 plus = momentum_element(final_state, initial, mode, +1);
  const CVec3 minus = momentum_element(final_state, initial, mode, -1);
  const double mu = initial.mu_e;
  return {c0 * mode.epsilon.cast<std::complex<double>>().dot(plus) / (mu * dE),
          c0 * mode.epsilon.cast<std::complex<double>>().dot(minus) / (mu * dE)};
}

namespace {

// e_{+1} = -(x + i y)/sqrt2, e_0 = z, e_{-1} = (x - i y)/sqrt2
CVec3 spherical_unit(int m) {
  const double r2 = std::sqrt(0.5);
  const std::complex<double> i(0.0, 1.0);
  if (m == 0) return CVec3(0.0, 0.0, 1.0);
  if (m == 1) return CVec3(-r2, -i * r2, 0.0);
  return CVec3(r2, -i * r2, 0.0);
}

}  // namespace

AmplitudeModel::AmplitudeModel(const TransitionSpec& spec, double k_max) : spec_(spec), k_max_(k_max) {
  spec_.validate();
  closed_form_ = is_1s2p_pair(spec_.initial, spec_.final_state);
  if (closed_form_) return;
  const Operator op = spec_.coupling == Coupling::Minimal ? Operator::Gradient : Operator::Position;
  expansion_ = &expansion(spec_.final_state, spec_.initial, op);
  if (k_max_ > 0.0) {
    for (int order = 24; order <= 384; order *= 2) {
      const auto nodes = ChebyshevSeries::nodes(0.0, k_max_, order);
      std::vector<std::vector<double>> vals(expansion_->radial_channels().size(), std::vector<double>(order));
      for (int j = 0; j < order; ++j) {
        const auto r = expansion_->radial_integrals(nodes[j]);
        for (size_t c = 0; c < r.size(); ++c) vals[c][j] = r[c];
      }
      interpolants_.clear();
      double worst = 0.0;
      for (auto& v : vals) {
        interpolants_.push_back(ChebyshevSeries::from_values(v, 0.0, k_max_));
        worst = std::max(worst, interpolants_.back().tail_ratio());
      }
      if (worst < 1e-14) break;
    }
  }
}

std::vector<double> AmplitudeModel::radial(double k_mag) const {
  if (!interpolants_.empty() && k_mag <= k_max_) {
    std::vector<double> r(interpolants_.size());
    for (size_t c = 0; c < r.size(); ++c) r[c] = interpolants_[c](k_mag);
    return r;
  }
  return expansion_->radial_integrals(k_mag);
}

CVec3 AmplitudeModel::element(const Vec3& k, int sign) const {
  if (!closed_form_) return expansion_->evaluate(k, sign, radial(k.norm()));
  // transverse part only; longitudinal pieces vanish against any polarization
  const double w = k.norm();
  const double Z = spec_.Z();
  const double mu = spec_.mu_e();
  const double dip = form_factor_1s2p(w, Z, Coupling::Dipole, mu);
  const bool excitation = spec_.initial.n == 1;
  const int m = excitation ? spec_.final_state.m : spec_.initial.m;
  const CVec3 e = spherical_unit(m);
  if (spec_.coupling == Coupling::Dipole) return excitation ? CVec3(dip * e.conjugate()) : CVec3(dip * e);
  const double gap_up = 0.375 * mu * mu * Z * Z * kAlpha * kAlpha;
  const double a = -gap_up * dip * envelope_1s2p(w, Z, mu);
  return excitation ? CVec3(a * e.conjugate()) : CVec3(-a * e);
}

std::complex<double> AmplitudeModel::projected(const ModeIndex& mode, int sign) const {
  return mode.epsilon.cast<std::complex<double>>().dot(element(mode.k, sign));
}

ModeAmplitude AmplitudeModel::operator()(const ModeIndex& mode, double T, bool global_phase) const {
  const double w = mode.omega;
  const double W = spec_.gap();
  const double q = std::sqrt(4.0 * kPi * kAlpha);
  const double c0 = mode_normalization(w);
  const std::complex<double> s1 = switching_sinc(W, w, T, Branch::Annihilation);
  const std::complex<double> s2 = switching_sinc(W, w, T, Branch::Creation);
  const std::complex<double> x1 = projected(mode, +1);
  const std::complex<double> x2 = projected(mode, -1);
  ModeAmplitude h;
  if (spec_.coupling == Coupling::Minimal) {
    const double mu = spec_.mu_e();
    if (W != 0.0) {
      h.h1 = q * c0 * (x1 / mu) * s1 * (w / W);
      h.h2 = -q * c0 * (x2 / mu) * s2 * (w / W);
    } else {
      h.h1 = q * c0 * (x1 / mu) * s1;
      h.h2 = q * c0 * (x2 / mu) * s2;
    }
  } else {
    h.h1 = -q * w * c0 * x1 * s1;
    h.h2 = q * w * c0 * x2 * s2;
  }
  if (global_phase) {
    const std::complex<double> ph = std::polar(1.0, -spec_.final_state.energy() * T);
    h.h1 *= ph;
    h.h2 *= ph;
  }
  return h;
}

ModeAmplitude mode_amplitude(const TransitionSpec& spec, const ModeIndex& mode, double T, bool global_phase) {
  return AmplitudeModel(spec)(mode, T, global_phase);
}

}  // namespace gaugecmp
