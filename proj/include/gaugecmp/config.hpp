#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaugecmp {

// Invalid configuration; carries the offending line (0 when not tied to a line) and field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : std::runtime_error(what), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }
  std::string diagnostic() const;

 private:
  int line_;
  std::string field_;
};

// [section] / key = value text with '#' and ';' comments.
class IniDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
  };

  static IniDocument parse(const std::string& text);
  static IniDocument load(const std::string& path);

  bool has(const std::string& field) const { return entries_.count(field) != 0; }
  // field is "section.key"
  const Entry* find(const std::string& field) const;
  void mark_used(const std::string& field) const;
  // first entry nobody consumed, or nullptr
  const std::pair<const std::string, Entry>* first_unused() const;

 private:
  std::map<std::string, Entry> entries_;
};

enum class Scenario { VacuumExcitation, Emission, Coherent, CutoffSweep, GaugeAudit };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

struct Levels {
  int n = 1, l = 0, m = 0;
};

struct RunConfig {
  Scenario scenario = Scenario::VacuumExcitation;
  std::string preset;

  Levels initial{1, 0, 0};
  Levels final_state{2, 1, 0};
  std::vector<double> Z = {1.0};
  double mu_e = 1.0;  // in units of the hydrogen reduced mass

  std::vector<double> T_in_inverse_Omega = {100.0};  // inf selects the long-time limit
  std::vector<double> Lambda_in_Z_over_a0;          // empty: no cutoff

  std::array<double, 3> k0_in_Omega = {1.0, 0.0, 0.0};
  std::array<double, 3> sigma_in_Omega = {0.01, 0.01, 0.01};
  int polarization = 1;
  double Tstar_in_inverse_Omega = 300.0;
  double amplitude_scale = 1.0;
  double box_sigmas = 6.0;
  double pulse_rel_change = 1e-6;

  double rel_tol = 1e-10;
  double abs_tol = 1e-24;
  double u_max = 200.0;

  double audit_k_scaled = 0.3;
  double audit_A0 = 1e-3;
  double audit_periods = 3.25;
  int audit_random_chi = 20;
  std::uint64_t audit_seed = 12345;
  double audit_chi_amplitude = 1.0;

  std::string out;
  unsigned workers = 1;

  void validate() const;
  // every consumed parameter as "section.key = value", in a fixed order
  std::vector<std::pair<std::string, std::string>> echo() const;
};

RunConfig figure_preset(const std::string& name);
std::vector<std::string> preset_names();

// Applies the document on top of base; unknown or malformed fields raise ConfigError.
RunConfig apply_config(const IniDocument& doc, RunConfig base);

// Numeric grid syntax: "a, b, c", "linspace(a, b, n)", "logspace(e0, e1, n)", "range(a, b)" (integers), "inf".
std::vector<double> parse_grid(const std::string& text);

std::string format_double(double v);

}  // namespace gaugecmp
