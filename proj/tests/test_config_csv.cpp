#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "qdr/config.hpp"
#include "qdr/csv.hpp"
#include "qdr/jsonout.hpp"

using namespace qdr;

namespace {

bool any_issue_contains(const ConfigError& e, const std::string& needle) {
  for (const auto& issue : e.issues()) {
    if (issue.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("transmon scenario parses with defaults filled in") {
  const std::string text = R"({
    "qubit_type": "transmon",
    "qubit": {"E_C": 0.25, "E_J": 12.5},
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10}
  })";
  const ScenarioConfig cfg = parse_config(text, "inline");
  CHECK(cfg.qubit_type == QubitType::transmon);
  CHECK(cfg.transmon.E_C == 0.25);
  CHECK(cfg.transmon.E_J == 12.5);
  CHECK(cfg.transmon.n_g == 0.0);
  CHECK(cfg.resonator.lambda_GHz == 0.1);
  REQUIRE(cfg.resonator.delta_over_g.has_value());
  CHECK(*cfg.resonator.delta_over_g == -10.0);
  CHECK(!cfg.resonator.omega_r_GHz.has_value());
  CHECK(cfg.numerics.n_max == 30);
  CHECK(cfg.numerics.ncp == 20);
  CHECK(cfg.numerics.k_levels == 0);
  CHECK(cfg.numerics.guard == 1e-3);
  CHECK(cfg.numerics.n_window == 2);
  CHECK(cfg.readout.scheme == ReadoutScheme::dispersive);
  CHECK(cfg.readout.nbar_target_ratio == 0.2);
  CHECK(!cfg.readout.kappa_MHz.has_value());
  CHECK(!cfg.readout.gz_tilde_MHz.has_value());
  CHECK(cfg.readout.target_fidelity == 0.9999);
  REQUIRE(cfg.readout.tau_grid_us.size() == 4);
  CHECK(cfg.readout.tau_grid_us[0] == 0.1);
  CHECK(cfg.readout.tau_grid_us[3] == 1.0);
}

TEST_CASE("majorana-transmon scenario reads every readout override") {
  const std::string text = R"({
    "qubit_type": "majorana-transmon",
    "qubit": {"E_C": 0.25, "E_J": 12.5, "E_M": 0.475, "phi_x": 0.3,
              "n_g": 0.1},
    "resonator": {"lambda_GHz": 0.1, "omega_r_GHz": 6.0},
    "readout": {"scheme": "longitudinal", "gz_tilde_MHz": 10.0,
                "kappa_MHz": 3.4, "target_fidelity": 0.999,
                "nbar_target_ratio": 0.1, "tau_grid_us": [0.05, 0.1]}
  })";
  const ScenarioConfig cfg = parse_config(text, "inline");
  CHECK(cfg.qubit_type == QubitType::majorana_transmon);
  CHECK(cfg.mt.E_M == 0.475);
  CHECK(cfg.mt.phi_x == 0.3);
  CHECK(cfg.mt.n_g == 0.1);
  REQUIRE(cfg.resonator.omega_r_GHz.has_value());
  CHECK(*cfg.resonator.omega_r_GHz == 6.0);
  CHECK(!cfg.resonator.delta_over_g.has_value());
  CHECK(cfg.readout.scheme == ReadoutScheme::longitudinal);
  REQUIRE(cfg.readout.gz_tilde_MHz.has_value());
  CHECK(*cfg.readout.gz_tilde_MHz == 10.0);
  REQUIRE(cfg.readout.kappa_MHz.has_value());
  CHECK(*cfg.readout.kappa_MHz == 3.4);
  CHECK(cfg.readout.target_fidelity == 0.999);
  CHECK(cfg.readout.nbar_target_ratio == 0.1);
  REQUIRE(cfg.readout.tau_grid_us.size() == 2);
  CHECK(cfg.readout.tau_grid_us[0] == 0.05);
}

TEST_CASE("majorana-box scenario reads numerics overrides") {
  const std::string text = R"({
    "qubit_type": "majorana-box",
    "qubit": {"E_tot": 2.5, "eps_dot": 2.5, "t_L": 1.0, "t_R": 1.0,
              "phi_x": 1.5707963267948966},
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10},
    "numerics": {"n_max": 12, "ncp": 4, "k_levels": 8, "guard": 1e-4,
                 "n_window": 1}
  })";
  const ScenarioConfig cfg = parse_config(text, "inline");
  CHECK(cfg.qubit_type == QubitType::majorana_box);
  CHECK(cfg.mb.E_tot == 2.5);
  CHECK(cfg.mb.eps_dot == 2.5);
  CHECK(cfg.mb.t_L == 1.0);
  CHECK(cfg.mb.t_R == 1.0);
  CHECK(cfg.numerics.n_max == 12);
  CHECK(cfg.numerics.ncp == 4);
  CHECK(cfg.numerics.k_levels == 8);
  CHECK(cfg.numerics.guard == 1e-4);
  CHECK(cfg.numerics.n_window == 1);
}

TEST_CASE("the resonator pair must be given exactly once") {
  const std::string both = R"({
    "qubit_type": "transmon",
    "qubit": {"E_C": 0.25, "E_J": 12.5},
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10, "omega_r_GHz": 6.0}
  })";
  try {
    parse_config(both, "inline");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(any_issue_contains(
        e, "exactly one of delta_over_g and omega_r_GHz must be given"));
  }

  const std::string neither = R"({
    "qubit_type": "transmon",
    "qubit": {"E_C": 0.25, "E_J": 12.5},
    "resonator": {"lambda_GHz": 0.1}
  })";
  CHECK_THROWS_AS(parse_config(neither, "inline"), ConfigError);
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  const std::string text = R"({
    "qubit_type": "transmon",
    "qubit": {"E_C": 0.25, "E_J": 12.5, "bogus": 1},
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10},
    "extra": {}
  })";
  try {
    parse_config(text, "scenario.json");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(any_issue_contains(e, "qubit.bogus: unknown key"));
    CHECK(any_issue_contains(e, "scenario.json.extra: unknown key"));
  }
}

TEST_CASE("every validation issue is collected before raising") {
  const std::string text = R"({
    "qubit_type": "transmon",
    "qubit": {"E_J": -1.0},
    "resonator": {"lambda_GHz": 0.0}
  })";
  try {
    parse_config(text, "inline");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.issues().size() >= 3);
    CHECK(any_issue_contains(e, "qubit.E_C: required field is missing"));
    CHECK(any_issue_contains(e, "qubit.E_J: must be positive"));
    CHECK(any_issue_contains(e, "resonator.lambda_GHz: must be nonzero"));
    CHECK(std::string(e.what()).find("configuration invalid:") == 0);
  }
}

TEST_CASE("field type and range validation covers readout and numerics") {
  const std::string text = R"({
    "qubit_type": "majorana-transmon",
    "qubit": {"E_C": 0.25, "E_J": 12.5, "E_M": -0.1},
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10},
    "numerics": {"n_max": 0},
    "readout": {"scheme": "foo", "kappa_MHz": 0.0, "target_fidelity": 1.0,
                "tau_grid_us": [0.1, -0.2]}
  })";
  try {
    parse_config(text, "inline");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(any_issue_contains(e, "qubit.E_M: must be >= 0"));
    CHECK(any_issue_contains(e, "numerics.n_max: must be >= 1"));
    CHECK(any_issue_contains(
        e, "readout.scheme: must be \"dispersive\" or \"longitudinal\""));
    CHECK(any_issue_contains(e, "readout.kappa_MHz: must be positive"));
    CHECK(any_issue_contains(e, "readout.target_fidelity"));
    CHECK(any_issue_contains(e, "readout.tau_grid_us: entries must be "
                                "positive"));
  }
}

TEST_CASE("malformed JSON and missing files fail with a clear message") {
  CHECK_THROWS_AS(parse_config("{ not json", "inline"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]", "inline"), ConfigError);
  try {
    load_config("/nonexistent/scenario.json");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(any_issue_contains(e, "cannot open file"));
  }

  const std::string bad_type = R"({
    "qubit_type": "flux-qubit",
    "qubit": {},
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10}
  })";
  CHECK_THROWS_AS(parse_config(bad_type, "inline"), ConfigError);
}

TEST_CASE("range sweeps expand to an inclusive grid") {
  const SweepSpec spec = parse_sweep("qubit.n_g=0:2:5");
  CHECK(spec.path == "qubit.n_g");
  REQUIRE(spec.values.size() == 5);
  CHECK(spec.values[0] == 0.0);
  CHECK(spec.values[1] == 0.5);
  CHECK(spec.values[2] == 1.0);
  CHECK(spec.values[3] == 1.5);
  CHECK(spec.values[4] == 2.0);

  const SweepSpec thirds = parse_sweep("x=0:1:3");
  CHECK(thirds.values.back() == 1.0);

  const SweepSpec single = parse_sweep("a=5:9:1");
  REQUIRE(single.values.size() == 1);
  CHECK(single.values[0] == 5.0);
}

TEST_CASE("list sweeps take the values verbatim") {
  const SweepSpec spec = parse_sweep("qubit.t=[1.5,2.5]");
  CHECK(spec.path == "qubit.t");
  REQUIRE(spec.values.size() == 2);
  CHECK(spec.values[0] == 1.5);
  CHECK(spec.values[1] == 2.5);
}

TEST_CASE("malformed sweep arguments are rejected") {
  CHECK_THROWS_AS(parse_sweep("qubit.n_g"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("=0:1:3"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p="), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p=0:1"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p=0:1:x"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p=0:1:0"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p=0:1:2000000"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p=[1,"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("p=[1,zz]"), ConfigError);
}

TEST_CASE("sweepable paths depend on the qubit type") {
  const auto has = [](const std::vector<std::string>& paths,
                      const std::string& p) {
    for (const auto& entry : paths) {
      if (entry == p) {
        return true;
      }
    }
    return false;
  };

  const auto transmon = sweep_paths(QubitType::transmon);
  CHECK(transmon.size() == 6);
  CHECK(has(transmon, "resonator.lambda_GHz"));
  CHECK(has(transmon, "resonator.delta_over_g"));
  CHECK(has(transmon, "resonator.omega_r_GHz"));
  CHECK(has(transmon, "qubit.n_g"));
  CHECK(has(transmon, "qubit.E_C"));
  CHECK(has(transmon, "qubit.E_J"));

  const auto mt = sweep_paths(QubitType::majorana_transmon);
  CHECK(mt.size() == 8);
  CHECK(has(mt, "qubit.E_M"));
  CHECK(has(mt, "qubit.phi_x"));

  const auto mb = sweep_paths(QubitType::majorana_box);
  CHECK(mb.size() == 10);
  CHECK(has(mb, "qubit.E_tot"));
  CHECK(has(mb, "qubit.eps_dot"));
  CHECK(has(mb, "qubit.t_L"));
  CHECK(has(mb, "qubit.t_R"));
  CHECK(has(mb, "qubit.t"));
  CHECK(has(mb, "qubit.phi_x"));
}

TEST_CASE("sweep values land on the right field") {
  ScenarioConfig cfg;
  cfg.qubit_type = QubitType::majorana_box;
  cfg.resonator.delta_over_g = -10.0;

  apply_sweep_value(cfg, "qubit.t", 2.25);
  CHECK(cfg.mb.t_L == 2.25);
  CHECK(cfg.mb.t_R == 2.25);

  apply_sweep_value(cfg, "resonator.omega_r_GHz", 6.5);
  CHECK(cfg.resonator.omega_r_GHz.has_value());
  CHECK(!cfg.resonator.delta_over_g.has_value());

  apply_sweep_value(cfg, "resonator.delta_over_g", -12.0);
  CHECK(cfg.resonator.delta_over_g.has_value());
  CHECK(!cfg.resonator.omega_r_GHz.has_value());

  apply_sweep_value(cfg, "resonator.lambda_GHz", 0.2);
  CHECK(cfg.resonator.lambda_GHz == 0.2);

  try {
    apply_sweep_value(cfg, "qubit.E_M", 0.5);
    CHECK(false);
  } catch (const ConfigError& e) {
    REQUIRE(e.issues().size() == 2);
    CHECK(e.issues()[0].find("not valid for qubit_type majorana-box") !=
          std::string::npos);
    CHECK(e.issues()[1].find("qubit.t_L") != std::string::npos);
  }

  ScenarioConfig mt_cfg;
  mt_cfg.qubit_type = QubitType::majorana_transmon;
  apply_sweep_value(mt_cfg, "qubit.E_M", 0.475);
  CHECK(mt_cfg.mt.E_M == 0.475);
}

TEST_CASE("seventeen significant digits round-trip exactly") {
  const double values[] = {0.0,
                           0.1,
                           -1.0 / 3.0,
                           std::numbers::pi,
                           2.5e-308,
                           1.7976931348623157e308,
                           6.283185307179586,
                           -12345.678901234567,
                           1e-300};
  for (const double x : values) {
    const std::string text = format_sig17(x);
    const double back = std::strtod(text.c_str(), nullptr);
    CHECK(back == x);
  }
  CHECK(format_sig17(1.5) == "1.5");
}

TEST_CASE("CSV tables write LF rows and reject ragged ones") {
  CsvTable table;
  table.header = {"a", "b"};
  table.rows = {{"1", "2"}, {"3", "4"}};
  CHECK(table.to_string() == "a,b\n1,2\n3,4\n");

  CsvTable ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{"1"}};
  std::ostringstream sink;
  CHECK_THROWS_AS(ragged.write(sink), std::logic_error);
}

TEST_CASE("CSV parsing inverts writing and rejects foreign endings") {
  CsvTable table;
  table.header = {"n_g", "freq_GHz", "flag"};
  table.rows = {{"0", "1.25", ""}, {"0.5", "2.5", "resonant"}};
  const CsvTable back = parse_csv(table.to_string());
  CHECK(back.header == table.header);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0] == table.rows[0]);
  CHECK(back.rows[1] == table.rows[1]);

  CHECK_THROWS_AS(parse_csv("a,b\r\n1,2\r\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
}

TEST_CASE("JSON writer emits deterministic insertion-ordered output") {
  std::ostringstream out;
  JsonWriter w(out);
  w.begin_object();
  w.key("pull");
  w.number(1.5);
  w.key("flags");
  w.begin_array();
  w.string_value("a\"b");
  w.boolean(true);
  w.integer(-3);
  w.end_array();
  w.key("nested");
  w.begin_object();
  w.key("x");
  w.number(0.1);
  w.end_object();
  w.end_object();
  CHECK(out.str() ==
        "{\"pull\":1.5,\"flags\":[\"a\\\"b\",true,-3],"
        "\"nested\":{\"x\":0.10000000000000001}}");
}

TEST_CASE("JSON escaping covers control characters") {
  CHECK(json_escape("line\nbreak") == "line\\nbreak");
  CHECK(json_escape("tab\there") == "tab\\there");
  CHECK(json_escape("quote\"slash\\") == "quote\\\"slash\\\\");
  CHECK(json_escape(std::string("bell\x01") + "x") == "bell\\u0001x");
}

TEST_CASE("JSON numbers must be finite") {
  std::ostringstream out;
  JsonWriter w(out);
  w.begin_array();
  CHECK_THROWS_AS(w.number(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(w.number(HUGE_VAL), std::invalid_argument);
  w.end_array();
}
