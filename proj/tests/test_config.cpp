#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaugecmp/config.hpp"
#include "gaugecmp/scenario.hpp"

using namespace gaugecmp;

TEST_SUITE("config") {

TEST_CASE("grid syntax") {
  CHECK(parse_grid("1, 2.5, 4") == std::vector<double>{1.0, 2.5, 4.0});
  const auto lin = parse_grid("linspace(0, 1, 5)");
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(0.5));
  CHECK(lin.back() == 1.0);
  const auto lg = parse_grid("logspace(-1, 1, 3)");
  REQUIRE(lg.size() == 3);
  CHECK(lg[0] == doctest::Approx(0.1));
  CHECK(lg[2] == doctest::Approx(10.0));
  CHECK(parse_grid("range(1, 4)") == std::vector<double>{1, 2, 3, 4});
  CHECK(std::isinf(parse_grid("inf")[0]));
  CHECK_THROWS_AS(parse_grid("linspace(0, 1)"), std::exception);
  CHECK_THROWS_AS(parse_grid("banana"), std::exception);
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("ini parsing and diagnostics") {
  const auto doc = IniDocument::parse("# comment\n[transition]\nZ = 1, 2 ; trailing\n\n[time]\nT_in_inverse_Omega = 5\n");
  REQUIRE(doc.find("transition.Z"));
  CHECK(doc.find("transition.Z")->line == 3);
  CHECK(doc.find("time.T_in_inverse_Omega")->line == 6);
  CHECK_THROWS_AS(IniDocument::parse("Z = 1\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[a]\nx = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[a]\nnoequals\n"), ConfigError);
}

TEST_CASE("malformed value reports its line and field") {
  const auto doc = IniDocument::parse("[transition]\nZ = 1\n\n[time]\nT_in_inverse_Omega = banana\n");
  try {
    apply_config(doc, RunConfig{});
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 5);
    CHECK(e.field() == "time.T_in_inverse_Omega");
    CHECK(e.diagnostic().find("line 5") != std::string::npos);
  }
}

TEST_CASE("unknown fields are rejected") {
  const auto doc = IniDocument::parse("[pulse]\nwidth = 3\n");
  try {
    apply_config(doc, RunConfig{});
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "pulse.width");
  }
}

TEST_CASE("validation errors point at the offending line") {
  const auto doc = IniDocument::parse("[transition]\ninitial = 1 0 0\nfinal = 2 2 0\n");
  try {
    apply_config(doc, RunConfig{});
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(apply_config(IniDocument::parse("[transition]\nZ = -1\n"), RunConfig{}), ConfigError);
  CHECK_THROWS_AS(apply_config(IniDocument::parse("[run]\nworkers = 0\n"), RunConfig{}), ConfigError);
}

TEST_CASE("scenario in the file must match the command") {
  RunConfig base;
  base.scenario = Scenario::Emission;
  CHECK_THROWS_AS(apply_config(IniDocument::parse("[run]\nscenario = coherent\n"), base), ConfigError);
  CHECK_NOTHROW(apply_config(IniDocument::parse("[run]\nscenario = emission\n"), RunConfig{base}));
  CHECK(parse_scenario("gauge-audit") == Scenario::GaugeAudit);
  CHECK_THROWS_AS(parse_scenario("nonsense"), ConfigError);
}

TEST_CASE("figure presets") {
  for (const auto& name : preset_names()) CHECK_NOTHROW(figure_preset(name).validate());
  const auto f1 = figure_preset("fig1");
  CHECK(f1.scenario == Scenario::VacuumExcitation);
  CHECK(f1.T_in_inverse_Omega[f1.T_in_inverse_Omega.size() - 2] == doctest::Approx(40.0));
  CHECK(std::isinf(f1.T_in_inverse_Omega.back()));
  const auto f7 = figure_preset("fig7");
  CHECK(f7.scenario == Scenario::Coherent);
  CHECK(f7.sigma_in_Omega[0] == 0.01);
  CHECK(f7.k0_in_Omega == std::array<double, 3>{1.0, 0.0, 0.0});
  const auto f9 = figure_preset("fig9");
  CHECK(f9.Lambda_in_Z_over_a0.size() == 61);
  CHECK(f9.Lambda_in_Z_over_a0.front() == doctest::Approx(1e-3));
  CHECK(figure_preset("fig6").Z.size() == 10);
  CHECK_THROWS_AS(figure_preset("fig3"), ConfigError);
}

TEST_CASE("echo omits run-local settings") {
  RunConfig a = figure_preset("fig2");
  RunConfig b = a;
  b.workers = 8;
  b.out = "elsewhere.csv";
  CHECK(a.echo() == b.echo());
}

TEST_CASE("scenario output does not depend on the worker count") {
  RunConfig c;
  c.scenario = Scenario::VacuumExcitation;
  c.Z = {1.0, 2.0};
  c.T_in_inverse_Omega = {0.5, 3.0, std::numeric_limits<double>::infinity()};
  const auto one = run_scenario(c);
  c.workers = 3;
  const auto three = run_scenario(c);
  CHECK(one.text == three.text);
  CHECK(one.failed_rows == 0);
  const auto cols = csv_columns(c);
  CHECK(std::find(cols.begin(), cols.end(), "rel_difference") != cols.end());
  CHECK(one.text.find("rel_difference") != std::string::npos);
}

}
