#include "qdr/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qdr/box.hpp"
#include "qdr/csv.hpp"
#include "qdr/engine.hpp"
#include "qdr/jsonout.hpp"
#include "qdr/kerr.hpp"
#include "qdr/mt.hpp"
#include "qdr/presets.hpp"
#include "qdr/readout.hpp"
#include "qdr/sweep.hpp"
#include "qdr/transmon.hpp"
#include "qdr/units.hpp"

namespace qdr {

namespace {

constexpr double kKerrRatioFloor = 10.0;

int default_k_levels(const ScenarioConfig& cfg, int fallback) {
  return cfg.numerics.k_levels > 0 ? cfg.numerics.k_levels : fallback;
}

MTParams transmon_as_mt(const TransmonParams& p) {
  MTParams mt;
  mt.E_C = p.E_C;
  mt.E_J = p.E_J;
  mt.n_g = p.n_g;
  mt.E_M = 0.0;
  mt.phi_x = 0.0;
  return mt;
}

void warn_if_shallow(double e_j, double e_c, OperatingPoint& op) {
  if (e_j < kKerrRatioFloor * e_c) {
    std::ostringstream msg;
    msg << "E_J/E_C = " << e_j / e_c
        << " is below " << kKerrRatioFloor
        << "; the closed-form frequencies degrade outside the "
           "weak-anharmonicity regime";
    op.warnings.push_back(msg.str());
  }
}

}  // namespace

OperatingPoint resolve_operating(const ScenarioConfig& cfg) {
  OperatingPoint op;
  const double lam_lin = cfg.resonator.lambda_GHz;
  double omega_q_lin = 0.0;
  double g_lin = 0.0;

  switch (cfg.qubit_type) {
    case QubitType::transmon: {
      const KerrApprox k = kerr_approximation(transmon_as_mt(cfg.transmon));
      omega_q_lin = k.omega_t;
      g_lin = std::abs(lam_lin) * k.g_t_per_lambda;
      warn_if_shallow(cfg.transmon.E_J, cfg.transmon.E_C, op);
      break;
    }
    case QubitType::majorana_transmon: {
      const KerrApprox k = kerr_approximation(cfg.mt);
      omega_q_lin = k.omega_plus;
      g_lin = std::abs(lam_lin) * k.g_t_per_lambda;
      warn_if_shallow(cfg.mt.E_J, cfg.mt.E_C, op);
      break;
    }
    case QubitType::majorana_box: {
      op.box_block = operating_block(cfg.mb, cfg.numerics.n_window);
      const BlockSolution sol = block_solution(cfg.mb, op.box_block);
      omega_q_lin = sol.f_plus;
      const BoxCouplings bc =
          box_couplings(cfg.mb, op.box_block, to_angular(lam_lin));
      g_lin = std::abs(bc.g_plus) / two_pi;
      break;
    }
  }

  double omega_r_lin = 0.0;
  double dog = 0.0;
  if (cfg.resonator.delta_over_g.has_value()) {
    dog = *cfg.resonator.delta_over_g;
    omega_r_lin = omega_q_lin - dog * g_lin;
  } else {
    omega_r_lin = cfg.resonator.omega_r_GHz.value_or(0.0);
    dog = g_lin != 0.0 ? (omega_q_lin - omega_r_lin) / g_lin : 0.0;
  }

  op.omega_q = to_angular(omega_q_lin);
  op.g = to_angular(g_lin);
  op.omega_r = to_angular(omega_r_lin);
  op.lambda = to_angular(lam_lin);
  op.delta_over_g = dog;
  return op;
}

RunResult run_spectrum(const ScenarioConfig& cfg, const SweepSpec& sweep,
                       std::ostream& out) {
  if (sweep.path != "qubit.n_g") {
    throw ConfigError(
        {"spectrum: the sweep path must be qubit.n_g, got '" + sweep.path +
         "'"});
  }
  if (sweep.values.empty()) {
    throw ConfigError({"spectrum: empty sweep"});
  }

  const int points = static_cast<int>(sweep.values.size());
  std::vector<std::vector<SpectrumRow>> chunks(points);
  parallel_for(points, [&](int i) {
    const double ng = sweep.values[i];
    switch (cfg.qubit_type) {
      case QubitType::transmon: {
        TransmonParams p = cfg.transmon;
        p.n_g = ng;
        const int keep = std::max(2, default_k_levels(cfg, 4));
        const TransmonLevels lv = transmon_levels(p, cfg.numerics.ncp, keep);
        const int kept = static_cast<int>(lv.spectrum.frequencies.size());
        for (int l = 0; l < kept; ++l) {
          chunks[i].push_back(
              {ng, 0, l, to_linear(lv.spectrum.frequencies(l))});
        }
        break;
      }
      case QubitType::majorana_transmon: {
        const ChargeBasis basis(cfg.numerics.n_max);
        chunks[i] = mt_spectrum_vs_ng(cfg.mt, {ng}, basis,
                                      default_k_levels(cfg, 4));
        break;
      }
      case QubitType::majorana_box: {
        chunks[i] = mb_spectrum_vs_ng(cfg.mb, {ng}, cfg.numerics.n_window);
        break;
      }
    }
  });

  CsvTable table;
  table.header = {"n_g", "sector_label", "level_index", "freq_GHz"};
  for (const auto& chunk : chunks) {
    for (const auto& row : chunk) {
      table.rows.push_back({format_sig17(row.n_g), std::to_string(row.sector),
                            std::to_string(row.level),
                            format_sig17(row.freq_GHz)});
    }
  }
  table.write(out);
  return {0, {}};
}

namespace {

struct ChiRow {
  double value = 0.0;
  bool numeric_ok = false;
  double chi_numeric_MHz = 0.0;
  double margin = 0.0;
  bool analytic_ok = false;
  double chi_analytic_MHz = 0.0;
  bool resonant = false;
  std::string error;
};

double numeric_chi_MHz(const ScenarioConfig& cfg, const OperatingPoint& op,
                       double* margin) {
  ChiResult res{0.0, 0.0};
  switch (cfg.qubit_type) {
    case QubitType::transmon:
      res = chi_transmon_numeric(cfg.transmon, op.lambda, op.omega_r,
                                 cfg.numerics.ncp, default_k_levels(cfg, 10),
                                 cfg.numerics.guard);
      break;
    case QubitType::majorana_transmon:
      res = chi_mt_converged(cfg.mt, op.lambda, op.omega_r,
                             cfg.numerics.n_max, default_k_levels(cfg, 12),
                             cfg.numerics.guard);
      break;
    case QubitType::majorana_box:
      res = chi_mb_numeric(cfg.mb, op.lambda, op.omega_r, op.box_block,
                           cfg.numerics.guard);
      break;
  }
  *margin = res.resonance_margin;
  return to_linear(res.chi) * 1e3;
}

double analytic_chi_MHz(const ScenarioConfig& cfg, const OperatingPoint& op) {
  double chi = 0.0;
  switch (cfg.qubit_type) {
    case QubitType::transmon:
      chi = chi_transmon_analytic(cfg.transmon, op.lambda, op.omega_r,
                                  cfg.numerics.guard);
      break;
    case QubitType::majorana_transmon:
      chi = chi_mt_analytic(cfg.mt, op.lambda, op.omega_r,
                            cfg.numerics.guard);
      break;
    case QubitType::majorana_box:
      chi = chi_mb_analytic(cfg.mb, op.lambda, op.omega_r, op.box_block,
                            cfg.numerics.guard);
      break;
  }
  return to_linear(chi) * 1e3;
}

}  // namespace

RunResult run_chi(const ScenarioConfig& cfg, const SweepSpec& sweep,
                  ChiMethod method, std::ostream& out) {
  if (sweep.values.empty()) {
    throw ConfigError({"chi: empty sweep"});
  }
  {
    // Surface bad sweep paths before any work is spawned.
    ScenarioConfig probe = cfg;
    apply_sweep_value(probe, sweep.path, sweep.values.front());
  }

  const bool want_numeric = method != ChiMethod::analytic;
  const bool want_analytic = method != ChiMethod::numeric;
  const int points = static_cast<int>(sweep.values.size());
  std::vector<ChiRow> rows(points);

  parallel_for(points, [&](int i) {
    ChiRow& row = rows[i];
    row.value = sweep.values[i];
    ScenarioConfig c = cfg;
    apply_sweep_value(c, sweep.path, row.value);
    const OperatingPoint op = resolve_operating(c);
    if (want_numeric) {
      try {
        row.chi_numeric_MHz = numeric_chi_MHz(c, op, &row.margin);
        row.numeric_ok = true;
      } catch (const ResonantPairError& e) {
        row.resonant = true;
        row.error = e.what();
      }
    }
    if (want_analytic) {
      try {
        row.chi_analytic_MHz = analytic_chi_MHz(c, op);
        row.analytic_ok = true;
      } catch (const ResonantPairError& e) {
        row.resonant = true;
        if (row.error.empty()) {
          row.error = e.what();
        }
      }
    }
  });

  CsvTable table;
  table.header = {"sweep_value"};
  if (want_numeric) {
    table.header.push_back("chi_numeric_MHz");
  }
  if (want_analytic) {
    table.header.push_back("chi_analytic_MHz");
  }
  if (want_numeric) {
    table.header.push_back("resonance_margin");
  }
  table.header.push_back("flag");

  RunResult result;
  int failed_rows = 0;
  for (int i = 0; i < points; ++i) {
    const ChiRow& row = rows[i];
    std::vector<std::string> cells = {format_sig17(row.value)};
    if (want_numeric) {
      cells.push_back(row.numeric_ok ? format_sig17(row.chi_numeric_MHz) : "");
    }
    if (want_analytic) {
      cells.push_back(row.analytic_ok ? format_sig17(row.chi_analytic_MHz)
                                      : "");
    }
    if (want_numeric) {
      cells.push_back(row.numeric_ok ? format_sig17(row.margin) : "");
    }
    cells.push_back(row.resonant ? "resonant" : "");
    table.rows.push_back(std::move(cells));

    const bool numeric_failed = want_numeric && !row.numeric_ok;
    const bool analytic_failed = want_analytic && !row.analytic_ok;
    const bool all_failed = (!want_numeric || numeric_failed) &&
                            (!want_analytic || analytic_failed);
    if (all_failed) {
      ++failed_rows;
    }
    if (row.resonant) {
      std::ostringstream msg;
      msg << "row " << i << " (sweep_value=" << format_sig17(row.value)
          << "): " << row.error;
      result.warnings.push_back(msg.str());
    }
  }
  table.write(out);
  result.exit_code = (failed_rows == points) ? 3 : 0;
  return result;
}

namespace {

void emit_resolved_config(JsonWriter& w, const ScenarioConfig& cfg,
                          const OperatingPoint& op, double kappa_MHz,
                          const char* scheme_name) {
  w.key("qubit_type");
  w.string_value(qubit_type_name(cfg.qubit_type));

  w.key("qubit");
  w.begin_object();
  switch (cfg.qubit_type) {
    case QubitType::transmon:
      w.key("E_C");
      w.number(cfg.transmon.E_C);
      w.key("E_J");
      w.number(cfg.transmon.E_J);
      w.key("n_g");
      w.number(cfg.transmon.n_g);
      break;
    case QubitType::majorana_transmon:
      w.key("E_C");
      w.number(cfg.mt.E_C);
      w.key("E_J");
      w.number(cfg.mt.E_J);
      w.key("n_g");
      w.number(cfg.mt.n_g);
      w.key("E_M");
      w.number(cfg.mt.E_M);
      w.key("phi_x");
      w.number(cfg.mt.phi_x);
      break;
    case QubitType::majorana_box:
      w.key("E_tot");
      w.number(cfg.mb.E_tot);
      w.key("eps_dot");
      w.number(cfg.mb.eps_dot);
      w.key("n_g");
      w.number(cfg.mb.n_g);
      w.key("t_L");
      w.number(cfg.mb.t_L);
      w.key("t_R");
      w.number(cfg.mb.t_R);
      w.key("phi_x");
      w.number(cfg.mb.phi_x);
      break;
  }
  w.end_object();

  w.key("resonator");
  w.begin_object();
  w.key("lambda_GHz");
  w.number(cfg.resonator.lambda_GHz);
  w.key("omega_r_GHz");
  w.number(to_linear(op.omega_r));
  w.key("delta_over_g");
  w.number(op.delta_over_g);
  w.key("omega_q_GHz");
  w.number(to_linear(op.omega_q));
  w.key("g_GHz");
  w.number(to_linear(op.g));
  if (cfg.qubit_type == QubitType::majorana_box) {
    w.key("box_block");
    w.integer(op.box_block);
  }
  w.end_object();

  w.key("numerics");
  w.begin_object();
  w.key("n_max");
  w.integer(cfg.numerics.n_max);
  w.key("ncp");
  w.integer(cfg.numerics.ncp);
  w.key("k_levels");
  w.integer(cfg.numerics.k_levels);
  w.key("guard");
  w.number(cfg.numerics.guard);
  w.key("n_window");
  w.integer(cfg.numerics.n_window);
  w.end_object();

  w.key("readout");
  w.begin_object();
  w.key("scheme");
  w.string_value(scheme_name);
  w.key("nbar_target_ratio");
  w.number(cfg.readout.nbar_target_ratio);
  w.key("kappa_MHz");
  w.number(kappa_MHz);
  if (cfg.readout.gz_tilde_MHz.has_value()) {
    w.key("gz_tilde_MHz");
    w.number(*cfg.readout.gz_tilde_MHz);
  }
  w.key("target_fidelity");
  w.number(cfg.readout.target_fidelity);
  w.key("tau_grid_us");
  w.begin_array();
  for (const double tau : cfg.readout.tau_grid_us) {
    w.number(tau);
  }
  w.end_array();
  w.end_object();
}

}  // namespace

RunResult run_readout(const ScenarioConfig& cfg, std::ostream& out) {
  const OperatingPoint op = resolve_operating(cfg);
  RunResult result;
  result.warnings = op.warnings;

  double margin = 0.0;
  const double chi_MHz = numeric_chi_MHz(cfg, op, &margin);
  const double chi_ang = to_angular(chi_MHz * 1e-3);
  const double matched_kappa = 2.0 * std::abs(chi_ang);

  double kappa_ang = matched_kappa;
  if (cfg.readout.kappa_MHz.has_value()) {
    kappa_ang = to_angular(*cfg.readout.kappa_MHz * 1e-3);
    if (std::abs(kappa_ang - matched_kappa) >
        1e-9 * std::max(matched_kappa, 1e-300)) {
      std::ostringstream msg;
      msg << "kappa override " << *cfg.readout.kappa_MHz
          << " MHz differs from the matched linewidth 2|chi| = "
          << to_linear(matched_kappa) * 1e3
          << " MHz; the dispersive SNR formula assumes the matched value";
      result.warnings.push_back(msg.str());
    }
  }

  const char* scheme_name =
      cfg.readout.scheme == ReadoutScheme::dispersive ? "dispersive"
                                                      : "longitudinal";
  double nbar = 0.0;
  std::vector<double> snr_at_tau;
  std::vector<double> fidelity_at_tau;
  double tau_to_target = 0.0;

  if (cfg.readout.scheme == ReadoutScheme::dispersive) {
    const DriveBudget budget = drive_from_photon_budget(
        kappa_ang, op.delta_over_g, cfg.readout.nbar_target_ratio);
    nbar = budget.nbar;
    DispersiveBudgetParams params{chi_ang, kappa_ang, budget.drive_amp,
                                  op.delta_over_g,
                                  cfg.readout.nbar_target_ratio};
    for (const double tau : cfg.readout.tau_grid_us) {
      const double snr = snr_dispersive(params, tau);
      snr_at_tau.push_back(snr);
      fidelity_at_tau.push_back(fidelity_from_snr(snr));
    }
    tau_to_target = time_to_fidelity(
        [&](double tau) { return snr_dispersive(params, tau); },
        cfg.readout.target_fidelity);
  } else {
    if (!cfg.readout.gz_tilde_MHz.has_value()) {
      throw ConfigError(
          {"readout.gz_tilde_MHz: required for the longitudinal scheme"});
    }
    const double gz_ang = to_angular(*cfg.readout.gz_tilde_MHz * 1e-3);
    LongitudinalBudgetParams params{gz_ang, kappa_ang};
    nbar = (gz_ang / kappa_ang) * (gz_ang / kappa_ang);
    for (const double tau : cfg.readout.tau_grid_us) {
      const double snr = snr_longitudinal(params, tau);
      snr_at_tau.push_back(snr);
      fidelity_at_tau.push_back(fidelity_from_snr(snr));
    }
    tau_to_target = time_to_fidelity(
        [&](double tau) { return snr_longitudinal(params, tau); },
        cfg.readout.target_fidelity);
  }

  JsonWriter w(out);
  w.begin_object();
  emit_resolved_config(w, cfg, op, to_linear(kappa_ang) * 1e3, scheme_name);
  w.key("chi_MHz");
  w.number(chi_MHz);
  w.key("kappa_MHz");
  w.number(to_linear(kappa_ang) * 1e3);
  w.key("nbar");
  w.number(nbar);
  w.key("resonance_margin");
  w.number(std::isfinite(margin) ? margin : 0.0);
  w.key("snr_at_tau");
  w.begin_array();
  for (const double v : snr_at_tau) {
    w.number(v);
  }
  w.end_array();
  w.key("fidelity_at_tau");
  w.begin_array();
  for (const double v : fidelity_at_tau) {
    w.number(v);
  }
  w.end_array();
  w.key("tau_to_target_us");
  w.number(tau_to_target);
  w.end_object();
  out << "\n";
  return result;
}

int reproduce_figure(int figure, const std::string& out_dir,
                     std::ostream& diag) {
  const FigureBundle bundle = make_figure(figure);
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(out_dir) / ("fig" + std::to_string(figure));
  fs::create_directories(dir);

  for (const auto& panel : bundle.panels) {
    {
      std::ofstream csv(dir / (panel.name + ".csv"), std::ios::binary);
      panel.table.write(csv);
    }
    {
      std::ofstream svg(dir / (panel.name + ".svg"), std::ios::binary);
      svg << render_line_plot(panel.plot);
    }
  }

  {
    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    JsonWriter w(mf);
    w.begin_object();
    w.key("figure");
    w.integer(bundle.figure);
    w.key("title");
    w.string_value(bundle.title);
    w.key("panels");
    w.begin_array();
    for (const auto& panel : bundle.panels) {
      w.string_value(panel.name);
    }
    w.end_array();
    w.key("parameters");
    w.begin_object();
    for (const auto& param : bundle.parameters) {
      w.key(param.key);
      if (param.numeric) {
        w.number(param.num);
      } else {
        w.string_value(param.text);
      }
    }
    w.end_object();
    w.key("checks");
    w.begin_array();
    for (const auto& check : bundle.checks) {
      w.begin_object();
      w.key("name");
      w.string_value(check.name);
      w.key("pass");
      w.boolean(check.pass);
      w.key("measured");
      w.number(check.measured);
      w.key("detail");
      w.string_value(check.detail);
      w.end_object();
    }
    w.end_array();
    w.key("notes");
    w.begin_array();
    for (const auto& note : bundle.notes) {
      w.string_value(note);
    }
    w.end_array();
    w.end_object();
    mf << "\n";
  }

  int failures = 0;
  for (const auto& check : bundle.checks) {
    diag << (check.pass ? "[PASS] " : "[FAIL] ") << "fig" << figure << " "
         << check.name << ": measured " << format_sig17(check.measured);
    if (!check.detail.empty()) {
      diag << " (" << check.detail << ")";
    }
    diag << "\n";
    if (!check.pass) {
      ++failures;
    }
  }
  return failures > 0 ? 3 : 0;
}

}  // namespace qdr
