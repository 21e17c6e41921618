#include "gaugecmp/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace gaugecmp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + trim(text) + "'");
  }
  if (pos != t.size()) throw std::invalid_argument("not a number: '" + trim(text) + "'");
  if (std::isnan(v)) throw std::invalid_argument("NaN is not allowed");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> numbers(const std::string& text) {
  std::vector<double> out;
  for (const auto& t : split_list(text)) out.push_back(parse_number(t));
  return out;
}

int parse_int(const std::string& text) {
  const double v = parse_number(text);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("not an integer");
  return static_cast<int>(v);
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_double(xs[i]);
  return s;
}

std::string join3(const std::array<double, 3>& xs) { return join({xs[0], xs[1], xs[2]}); }

std::string levels_text(const Levels& q) {
  return std::to_string(q.n) + " " + std::to_string(q.l) + " " + std::to_string(q.m);
}

}  // namespace

std::string ConfigError::diagnostic() const {
  std::string s = "config error";
  if (line_ > 0) s += " at line " + std::to_string(line_);
  if (!field_.empty()) s += " [" + field_ + "]";
  return s + ": " + what();
}

IniDocument IniDocument::parse(const std::string& text) {
  IniDocument doc;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto c = s.find_first_of("#;");
    if (c != std::string::npos) s = s.substr(0, c);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("unterminated section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", line);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (section.empty()) throw ConfigError("key outside of any [section]", line, key);
    const std::string field = section + "." + key;
    if (doc.entries_.count(field))
      throw ConfigError("duplicate key (first set on line " + std::to_string(doc.entries_[field].line) + ")", line,
                        field);
    doc.entries_[field] = Entry{trim(s.substr(eq + 1)), line, false};
  }
  return doc;
}

IniDocument IniDocument::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

const IniDocument::Entry* IniDocument::find(const std::string& field) const {
  const auto it = entries_.find(field);
  return it == entries_.end() ? nullptr : &it->second;
}

void IniDocument::mark_used(const std::string& field) const {
  const auto it = entries_.find(field);
  if (it != entries_.end()) const_cast<Entry&>(it->second).used = true;
}

const std::pair<const std::string, IniDocument::Entry>* IniDocument::first_unused() const {
  const std::pair<const std::string, Entry>* best = nullptr;
  for (const auto& kv : entries_)
    if (!kv.second.used && (!best || kv.second.line < best->second.line)) best = &kv;
  return best;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::VacuumExcitation: return "vacuum-excitation";
    case Scenario::Emission: return "emission";
    case Scenario::Coherent: return "coherent";
    case Scenario::CutoffSweep: return "cutoff-sweep";
    case Scenario::GaugeAudit: return "gauge-audit";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  for (auto s : {Scenario::VacuumExcitation, Scenario::Emission, Scenario::Coherent, Scenario::CutoffSweep,
                 Scenario::GaugeAudit})
    if (to_string(s) == name) return s;
  throw ConfigError("unknown scenario '" + name + "'", 0, "run.scenario");
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open != std::string::npos) {
    if (t.back() != ')') throw std::invalid_argument("unterminated grid expression");
    const std::string fn = lower(trim(t.substr(0, open)));
    const auto args = numbers(t.substr(open + 1, t.size() - open - 2));
    if (fn == "linspace" || fn == "logspace") {
      if (args.size() != 3) throw std::invalid_argument(fn + " takes (start, stop, count)");
      const int n = static_cast<int>(args[2]);
      if (args[2] != n || n < 1) throw std::invalid_argument("grid count must be a positive integer");
      std::vector<double> out(n);
      for (int i = 0; i < n; ++i) {
        const double x = n == 1 ? args[0] : args[0] + (args[1] - args[0]) * i / (n - 1);
        out[i] = fn == "linspace" ? x : std::pow(10.0, x);
      }
      return out;
    }
    if (fn == "range") {
      if (args.size() != 2 || args[0] != std::floor(args[0]) || args[1] != std::floor(args[1]) || args[1] < args[0])
        throw std::invalid_argument("range takes (first, last) integers with first <= last");
      std::vector<double> out;
      for (double x = args[0]; x <= args[1]; x += 1.0) out.push_back(x);
      return out;
    }
    throw std::invalid_argument("unknown grid function '" + fn + "'");
  }
  auto out = numbers(t);
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) { throw ConfigError(msg, 0, field); };
  for (const auto& [q, field] : {std::pair{initial, "transition.initial"}, std::pair{final_state, "transition.final"}})
    if (q.n < 1 || q.l < 0 || q.l >= q.n || std::abs(q.m) > q.l) fail(field, "invalid quantum numbers " + levels_text(q));
  if (initial.n == final_state.n && initial.l == final_state.l && initial.m == final_state.m)
    fail("transition.final", "initial and final states coincide");
  if (Z.empty()) fail("transition.Z", "empty Z grid");
  for (double z : Z)
    if (!(z > 0.0) || !std::isfinite(z)) fail("transition.Z", "Z must be positive and finite");
  if (!(mu_e > 0.0) || !std::isfinite(mu_e)) fail("transition.mu_e_in_reduced_mass", "must be positive");
  if ((scenario == Scenario::VacuumExcitation || scenario == Scenario::Coherent) && T_in_inverse_Omega.empty())
    fail("time.T_in_inverse_Omega", "empty time grid");
  for (double t : T_in_inverse_Omega)
    if (!(t > 0.0)) fail("time.T_in_inverse_Omega", "times must be positive (inf for the long-time limit)");
  for (double l : Lambda_in_Z_over_a0)
    if (!(l > 0.0)) fail("cutoff.Lambda_in_Z_over_a0", "cutoffs must be positive");
  if (scenario == Scenario::CutoffSweep) {
    if (Lambda_in_Z_over_a0.empty()) fail("cutoff.Lambda_in_Z_over_a0", "cutoff-sweep needs a Lambda grid");
    if (T_in_inverse_Omega.size() > 1) fail("time.T_in_inverse_Omega", "cutoff-sweep takes a single time");
  }
  if (scenario == Scenario::Coherent || scenario == Scenario::Emission)
    for (double t : T_in_inverse_Omega)
      if (!std::isfinite(t)) fail("time.T_in_inverse_Omega", "this scenario needs finite times");
  for (double s : sigma_in_Omega)
    if (!(s > 0.0)) fail("pulse.sigma_in_Omega", "widths must be positive");
  if (polarization != 1 && polarization != 2) fail("pulse.polarization", "must be 1 or 2");
  if (!(box_sigmas > 0.0)) fail("pulse.box_sigmas", "must be positive");
  if (!(pulse_rel_change > 0.0)) fail("pulse.rel_change", "must be positive");
  if (!(rel_tol > 0.0)) fail("tolerances.rel_tol", "must be positive");
  if (!(abs_tol > 0.0)) fail("tolerances.abs_tol", "must be positive");
  if (!(u_max > 0.0)) fail("tolerances.u_max_in_Z_over_a0", "must be positive");
  if (!(audit_k_scaled >= 0.0)) fail("audit.k_in_Z_over_a0", "must be >= 0");
  if (!(audit_A0 > 0.0)) fail("audit.A0", "must be positive");
  if (!(audit_periods > 0.0)) fail("audit.periods", "must be positive");
  if (audit_random_chi < 1) fail("audit.random_chi", "must be >= 1");
  if (!(audit_chi_amplitude > 0.0)) fail("audit.chi_amplitude_in_A0_a0_over_Z", "must be positive");
  if (workers < 1) fail("run.workers", "must be >= 1");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("run.scenario", to_string(scenario));
  e.emplace_back("run.preset", preset.empty() ? "none" : preset);
  if (scenario != Scenario::GaugeAudit) {
    e.emplace_back("transition.initial", levels_text(initial));
    e.emplace_back("transition.final", levels_text(final_state));
  }
  e.emplace_back("transition.Z", join(Z));
  e.emplace_back("transition.mu_e_in_reduced_mass", format_double(mu_e));
  if (scenario != Scenario::GaugeAudit) {
    e.emplace_back("time.T_in_inverse_Omega", T_in_inverse_Omega.empty() ? "none" : join(T_in_inverse_Omega));
    e.emplace_back("cutoff.Lambda_in_Z_over_a0", Lambda_in_Z_over_a0.empty() ? "none" : join(Lambda_in_Z_over_a0));
    e.emplace_back("tolerances.rel_tol", format_double(rel_tol));
    e.emplace_back("tolerances.abs_tol", format_double(abs_tol));
    e.emplace_back("tolerances.u_max_in_Z_over_a0", format_double(u_max));
  }
  if (scenario == Scenario::Coherent) {
    e.emplace_back("pulse.k0_in_Omega", join3(k0_in_Omega));
    e.emplace_back("pulse.sigma_in_Omega", join3(sigma_in_Omega));
    e.emplace_back("pulse.polarization", std::to_string(polarization));
    e.emplace_back("pulse.Tstar_in_inverse_Omega", format_double(Tstar_in_inverse_Omega));
    e.emplace_back("pulse.amplitude_scale", format_double(amplitude_scale));
    e.emplace_back("pulse.box_sigmas", format_double(box_sigmas));
    e.emplace_back("pulse.rel_change", format_double(pulse_rel_change));
  }
  if (scenario == Scenario::GaugeAudit) {
    e.emplace_back("audit.k_in_Z_over_a0", format_double(audit_k_scaled));
    e.emplace_back("audit.A0", format_double(audit_A0));
    e.emplace_back("audit.periods", format_double(audit_periods));
    e.emplace_back("audit.random_chi", std::to_string(audit_random_chi));
    e.emplace_back("audit.seed", std::to_string(audit_seed));
    e.emplace_back("audit.chi_amplitude_in_A0_a0_over_Z", format_double(audit_chi_amplitude));
  }
  return e;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig5", "fig6", "fig7", "fig8", "fig9"}; }

RunConfig figure_preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  const auto inf = std::numeric_limits<double>::infinity();
  const auto z_grid = parse_grid("range(1, 10)");
  if (name == "fig1") {
    c.scenario = Scenario::VacuumExcitation;
    c.T_in_inverse_Omega = parse_grid("linspace(0.2, 40, 200)");
    c.T_in_inverse_Omega.push_back(inf);
  } else if (name == "fig2") {
    c.scenario = Scenario::VacuumExcitation;
    c.Z = z_grid;
    c.T_in_inverse_Omega = {inf};
  } else if (name == "fig5") {
    c.scenario = Scenario::Emission;
    c.initial = {2, 1, 0};
    c.final_state = {1, 0, 0};
    c.T_in_inverse_Omega = parse_grid("logspace(-1, 5, 121)");
  } else if (name == "fig6") {
    c.scenario = Scenario::Emission;
    c.initial = {2, 1, 0};
    c.final_state = {1, 0, 0};
    c.Z = z_grid;
    c.T_in_inverse_Omega.clear();
  } else if (name == "fig7") {
    c.scenario = Scenario::Coherent;
    c.T_in_inverse_Omega = parse_grid("linspace(10, 600, 60)");
  } else if (name == "fig8") {
    c.scenario = Scenario::Coherent;
    c.Z = z_grid;
    c.T_in_inverse_Omega = {600.0};
  } else if (name == "fig9") {
    c.scenario = Scenario::CutoffSweep;
    c.T_in_inverse_Omega = {inf};
    c.Lambda_in_Z_over_a0 = parse_grid("logspace(-3, 3, 61)");
  } else {
    throw ConfigError("unknown preset '" + name + "'", 0, "--preset");
  }
  return c;
}

RunConfig apply_config(const IniDocument& doc, RunConfig c) {
  auto with = [&](const std::string& field, auto&& setter) {
    const auto* e = doc.find(field);
    if (!e) return;
    doc.mark_used(field);
    try {
      setter(e->value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError(ex.what(), e->line, field);
    }
  };
  auto levels = [](const std::string& v) {
    const auto xs = numbers(v);
    if (xs.size() != 3) throw std::invalid_argument("expected three integers 'n l m'");
    Levels q;
    q.n = parse_int(format_double(xs[0]));
    q.l = parse_int(format_double(xs[1]));
    q.m = parse_int(format_double(xs[2]));
    return q;
  };
  auto vec3 = [](const std::string& v) {
    const auto xs = numbers(v);
    if (xs.size() != 3) throw std::invalid_argument("expected three numbers");
    return std::array<double, 3>{xs[0], xs[1], xs[2]};
  };
  auto scalar = [](const std::string& v) {
    const double x = parse_number(v);
    if (!std::isfinite(x)) throw std::invalid_argument("must be finite");
    return x;
  };

  with("run.scenario", [&](const std::string& v) {
    if (parse_scenario(trim(v)) != c.scenario)
      throw std::invalid_argument("scenario '" + trim(v) + "' does not match the requested '" +
                                  to_string(c.scenario) + "'");
  });
  with("run.out", [&](const std::string& v) { c.out = v; });
  with("run.workers", [&](const std::string& v) {
    const int w = parse_int(v);
    if (w < 1) throw std::invalid_argument("must be >= 1");
    c.workers = static_cast<unsigned>(w);
  });
  with("transition.initial", [&](const std::string& v) { c.initial = levels(v); });
  with("transition.final", [&](const std::string& v) { c.final_state = levels(v); });
  with("transition.Z", [&](const std::string& v) { c.Z = parse_grid(v); });
  with("transition.mu_e_in_reduced_mass", [&](const std::string& v) { c.mu_e = scalar(v); });
  with("time.T_in_inverse_Omega", [&](const std::string& v) {
    c.T_in_inverse_Omega = lower(trim(v)) == "none" ? std::vector<double>{} : parse_grid(v);
  });
  with("cutoff.Lambda_in_Z_over_a0", [&](const std::string& v) {
    c.Lambda_in_Z_over_a0 = lower(trim(v)) == "none" ? std::vector<double>{} : parse_grid(v);
  });
  with("pulse.k0_in_Omega", [&](const std::string& v) { c.k0_in_Omega = vec3(v); });
  with("pulse.sigma_in_Omega", [&](const std::string& v) { c.sigma_in_Omega = vec3(v); });
  with("pulse.polarization", [&](const std::string& v) { c.polarization = parse_int(v); });
  with("pulse.Tstar_in_inverse_Omega", [&](const std::string& v) { c.Tstar_in_inverse_Omega = scalar(v); });
  with("pulse.amplitude_scale", [&](const std::string& v) { c.amplitude_scale = scalar(v); });
  with("pulse.box_sigmas", [&](const std::string& v) { c.box_sigmas = scalar(v); });
  with("pulse.rel_change", [&](const std::string& v) { c.pulse_rel_change = scalar(v); });
  with("tolerances.rel_tol", [&](const std::string& v) { c.rel_tol = scalar(v); });
  with("tolerances.abs_tol", [&](const std::string& v) { c.abs_tol = scalar(v); });
  with("tolerances.u_max_in_Z_over_a0", [&](const std::string& v) { c.u_max = scalar(v); });
  with("audit.k_in_Z_over_a0", [&](const std::string& v) { c.audit_k_scaled = scalar(v); });
  with("audit.A0", [&](const std::string& v) { c.audit_A0 = scalar(v); });
  with("audit.periods", [&](const std::string& v) { c.audit_periods = scalar(v); });
  with("audit.random_chi", [&](const std::string& v) { c.audit_random_chi = parse_int(v); });
  with("audit.seed", [&](const std::string& v) {
    const double s = parse_number(v);
    if (s < 0 || s != std::floor(s) || s > 9.0e15) throw std::invalid_argument("seed must be a non-negative integer");
    c.audit_seed = static_cast<std::uint64_t>(s);
  });
  with("audit.chi_amplitude_in_A0_a0_over_Z", [&](const std::string& v) { c.audit_chi_amplitude = scalar(v); });

  if (const auto* u = doc.first_unused()) throw ConfigError("unknown field", u->second.line, u->first);

  // re-raise validation failures with the line that set the field
  try {
    c.validate();
  } catch (ConfigError& e) {
    const auto* entry = doc.find(e.field());
    throw ConfigError(e.what(), entry ? entry->line : 0, e.field());
  }
  return c;
}

}  // namespace gaugecmp
