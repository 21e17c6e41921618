#include "gaugecmp/scenario.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "gaugecmp/gauge_audit.hpp"
#include "gaugecmp/parallel.hpp"
#include "gaugecmp/probability.hpp"

namespace gaugecmp {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Row {
  std::vector<double> values;
  std::string status = "ok";
  bool failed = false;
};

struct Pair {
  ProbabilityResult dip, min;
};

bool emission_rate_mode(const RunConfig& cfg) {
  return cfg.scenario == Scenario::Emission && cfg.T_in_inverse_Omega.empty();
}

TransitionSpec make_spec(const RunConfig& cfg, double Z, Coupling c, std::optional<double> Lambda_scaled) {
  const AtomicState i(cfg.initial.n, cfg.initial.l, cfg.initial.m, Z, cfg.mu_e);
  const AtomicState f(cfg.final_state.n, cfg.final_state.l, cfg.final_state.m, Z, cfg.mu_e);
  std::optional<double> Lambda;
  if (Lambda_scaled) Lambda = *Lambda_scaled * Z * cfg.mu_e * kAlpha;
  return make_transition(i, f, c, 0.0, Lambda);
}

ProbabilityOptions probability_options(const RunConfig& cfg) {
  ProbabilityOptions o;
  o.rel_tol = cfg.rel_tol;
  o.abs_tol = cfg.abs_tol;
  o.u_max = cfg.u_max;
  o.workers = 1;
  return o;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

std::string header(const RunConfig& cfg, const std::vector<std::string>& columns) {
  std::ostringstream os;
  os << "# gaugecmp " << to_string(cfg.scenario) << "\n";
  os << "# units: natural units hbar = c = eps0 = 1, charge^2 = 4 pi alpha, alpha = " << format_double(kAlpha)
     << "\n";
  os << "# units: Omega = |E_f - E_i|, a0 = 1/(mu_e alpha); T in 1/Omega, Lambda in Z/a0, rates in 1/s\n";
  os << "# config:\n";
  for (const auto& [k, v] : cfg.echo()) os << "#   " << k << " = " << v << "\n";
  if (!columns.empty()) {
    os << "# columns:";
    for (const auto& c : columns) os << " " << c;
    os << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
  }
  return os.str();
}

Row probability_row(double Z, double T, std::optional<double> Lambda, const Pair& p, bool pphi_headline) {
  Row r;
  const double pd = pphi_headline ? p.dip.Pphi : p.dip.total;
  const double pm = pphi_headline ? p.min.Pphi : p.min.total;
  const double diff = std::abs(pd - pm);
  r.values = {Z,          T,          Lambda ? *Lambda : kNaN, pd,   pm, p.dip.P0, p.min.P0, p.dip.Pphi, p.min.Pphi,
              diff, pm != 0.0 ? diff / std::abs(pm) : kNaN, p.dip.quad_error + p.min.quad_error};
  std::vector<std::string> w = p.dip.warnings;
  w.insert(w.end(), p.min.warnings.begin(), p.min.warnings.end());
  if (!w.empty()) {
    r.status = "warning: " + w.front();
    r.failed = true;
  }
  return r;
}

std::string write_value(double v) {
  if (std::isnan(v)) return "nan";
  return format_double(v);
}

}  // namespace

std::vector<std::string> csv_columns(const RunConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::GaugeAudit: return {};
    case Scenario::Emission:
      if (emission_rate_mode(cfg))
        return {"Z", "rate_dip_per_s", "rate_min_per_s", "abs_difference_per_s", "rel_difference",
                "envelope_constant", "status"};
      break;
    case Scenario::CutoffSweep:
      return {"Z", "T_in_inverse_Omega", "Lambda_in_Z_over_a0", "P_dip", "P_min", "abs_difference",
              "rel_difference", "quad_error", "status"};
    default: break;
  }
  return {"Z",       "T_in_inverse_Omega", "Lambda_in_Z_over_a0", "P_dip",          "P_min",
          "P0_dip",  "P0_min",             "Pphi_dip",            "Pphi_min",       "abs_difference",
          "rel_difference", "quad_error", "status"};
}

ScenarioOutput run_scenario(const RunConfig& cfg) {
  cfg.validate();
  ScenarioOutput out;

  if (cfg.scenario == Scenario::GaugeAudit) {
    std::ostringstream os;
    os << header(cfg, {});
    for (double Z : cfg.Z) {
      audit::AuditConfig a;
      a.Z = Z;
      a.mu_e = cfg.mu_e;
      a.A0 = cfg.audit_A0;
      a.k_scaled = cfg.audit_k_scaled;
      a.periods = cfg.audit_periods;
      a.random_chi = cfg.audit_random_chi;
      a.seed = cfg.audit_seed;
      a.chi_amplitude = cfg.audit_chi_amplitude;
      const auto rep = audit::run_gauge_audit(a);
      os << "Z = " << format_double(Z) << "\n" << rep.to_text();
      if (!rep.passed()) out.audit_failed = true;
    }
    out.text = os.str();
    return out;
  }

  for (double Z : cfg.Z) {
    double gap = 0.0;
    try {
      gap = make_spec(cfg, Z, Coupling::Minimal, std::nullopt).gap();
    } catch (const std::exception& e) {
      throw ConfigError(e.what(), 0, "transition");
    }
    if (cfg.scenario == Scenario::Emission && !(gap < 0.0))
      throw ConfigError("emission needs a final state below the initial state", 0, "transition.final");
    if (cfg.scenario != Scenario::Emission && !(gap > 0.0))
      throw ConfigError("this scenario needs an excitation (final state above the initial state)", 0,
                        "transition.final");
  }

  const auto columns = csv_columns(cfg);
  const ProbabilityOptions popts = probability_options(cfg);
  std::vector<std::function<Row()>> jobs;

  std::vector<std::optional<double>> lambdas;
  if (cfg.Lambda_in_Z_over_a0.empty())
    lambdas.push_back(std::nullopt);
  else
    for (double l : cfg.Lambda_in_Z_over_a0) lambdas.push_back(l);

  for (double Z : cfg.Z) {
    const double Omega = std::abs(make_spec(cfg, Z, Coupling::Minimal, std::nullopt).gap());
    if (emission_rate_mode(cfg)) {
      jobs.push_back([=, &cfg] {
        const auto dip = make_spec(cfg, Z, Coupling::Dipole, std::nullopt);
        const auto min = make_spec(cfg, Z, Coupling::Minimal, std::nullopt);
        const double rd = emission_rate_si(dip, popts), rm = emission_rate_si(min, popts);
        Row r;
        r.values = {Z, rd, rm, std::abs(rd - rm), std::abs(rd - rm) / rm, envelope_constant(min)};
        return r;
      });
      continue;
    }
    if (cfg.scenario == Scenario::CutoffSweep) {
      const double Tu = cfg.T_in_inverse_Omega.empty() ? std::numeric_limits<double>::infinity()
                                                       : cfg.T_in_inverse_Omega.front();
      for (double L : cfg.Lambda_in_Z_over_a0)
        jobs.push_back([=, &cfg] {
          const auto spec = make_spec(cfg, Z, Coupling::Minimal, std::nullopt);
          const auto p = cutoff_sweep(spec, std::isfinite(Tu) ? Tu / Omega : 0.0, {L}, popts).front();
          Row r;
          const double diff = std::abs(p.difference);
          r.values = {Z, Tu, L, p.P_dip, p.P_min, diff, diff / p.P_min, p.quad_error};
          return r;
        });
      continue;
    }
    for (double Tu : cfg.T_in_inverse_Omega)
      for (const auto& L : lambdas)
        jobs.push_back([=, &cfg] {
          Pair p;
          const auto dip = make_spec(cfg, Z, Coupling::Dipole, L);
          const auto min = make_spec(cfg, Z, Coupling::Minimal, L);
          const double T = Tu / Omega;
          if (cfg.scenario == Scenario::Coherent) {
            CoherentGaussianPulse pulse;
            pulse.k0 = Vec3(cfg.k0_in_Omega[0], cfg.k0_in_Omega[1], cfg.k0_in_Omega[2]) * Omega;
            pulse.sigma = Vec3(cfg.sigma_in_Omega[0], cfg.sigma_in_Omega[1], cfg.sigma_in_Omega[2]) * Omega;
            pulse.lambda0 = cfg.polarization;
            pulse.Tstar = cfg.Tstar_in_inverse_Omega / Omega;
            pulse.amplitude_scale = cfg.amplitude_scale;
            CoherentOptions co;
            co.box_sigmas = cfg.box_sigmas;
            co.rel_change = cfg.pulse_rel_change;
            co.workers = 1;
            co.vacuum = popts;
            p.dip = coherent_Pphi(dip, pulse, T, co);
            p.min = coherent_Pphi(min, pulse, T, co);
            return probability_row(Z, Tu, L, p, true);
          }
          if (cfg.scenario == Scenario::Emission) {
            p.dip = emission_probability(dip, T, popts);
            p.min = emission_probability(min, T, popts);
          } else if (std::isinf(Tu)) {
            p.dip = asymptotic_vacuum_probability(dip, popts);
            p.min = asymptotic_vacuum_probability(min, popts);
          } else {
            p.dip = vacuum_probability(dip, T, popts);
            p.min = vacuum_probability(min, T, popts);
          }
          return probability_row(Z, Tu, L, p, false);
        });
  }

  std::vector<Row> rows(jobs.size());
  parallel_for_indexed(jobs.size(), cfg.workers, [&](std::size_t i) {
    try {
      rows[i] = jobs[i]();
    } catch (const QuadratureError& e) {
      rows[i].status = sanitize(std::string("quadrature failure: ") + e.what());
      rows[i].failed = true;
    } catch (const std::exception& e) {
      rows[i].status = sanitize(std::string("error: ") + e.what());
      rows[i].failed = true;
    }
  });

  std::ostringstream os;
  os << header(cfg, columns);
  for (const auto& r : rows) {
    const std::size_t nvalues = columns.size() - 1;
    for (std::size_t c = 0; c < nvalues; ++c) os << (c < r.values.size() ? write_value(r.values[c]) : "nan") << ",";
    os << r.status << "\n";
    if (r.failed) ++out.failed_rows;
  }
  out.text = os.str();
  return out;
}

}  // namespace gaugecmp
