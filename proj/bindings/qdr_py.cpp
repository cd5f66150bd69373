#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <vector>

#include "qdr/basis.hpp"
#include "qdr/box.hpp"
#include "qdr/engine.hpp"
#include "qdr/kerr.hpp"
#include "qdr/mt.hpp"
#include "qdr/params.hpp"
#include "qdr/readout.hpp"
#include "qdr/transmon.hpp"
#include "qdr/units.hpp"

namespace py = pybind11;

namespace {

using namespace qdr;

MBParams make_mb(double e_tot, double eps_dot, double n_g, double t_l,
                 double t_r, double phi_x) {
  MBParams p;
  p.E_tot = e_tot;
  p.eps_dot = eps_dot;
  p.n_g = n_g;
  p.t_L = t_l;
  p.t_R = t_r;
  p.phi_x = phi_x;
  return p;
}

MTParams make_mt(double e_c, double e_j, double e_m, double phi_x,
                 double n_g) {
  MTParams p;
  p.E_C = e_c;
  p.E_J = e_j;
  p.E_M = e_m;
  p.phi_x = phi_x;
  p.n_g = n_g;
  return p;
}

py::dict chi_dict(const ChiResult& res) {
  py::dict out;
  out["chi_MHz"] = to_linear(res.chi) * 1e3;
  out["resonance_margin"] = res.resonance_margin;
  return out;
}

}  // namespace

PYBIND11_MODULE(qdrpy, m) {
  m.doc() =
      "Desk-scale dispersive readout estimates for Majorana charge qubits. "
      "All energies are linear GHz, couplings linear GHz, times microseconds.";

  m.def(
      "transmon_levels",
      [](double e_c, double e_j, double n_g, int ncp, int n_levels) {
        TransmonParams p;
        p.E_C = e_c;
        p.E_J = e_j;
        p.n_g = n_g;
        const TransmonLevels lv = transmon_levels(p, ncp, n_levels);
        std::vector<double> out;
        for (int k = 0; k < lv.spectrum.frequencies.size(); ++k) {
          out.push_back(to_linear(lv.spectrum.frequencies(k)));
        }
        return out;
      },
      py::arg("E_C"), py::arg("E_J"), py::arg("n_g") = 0.0,
      py::arg("ncp") = 20, py::arg("n_levels") = 4,
      "Level frequencies in GHz, referenced to the ground level.");

  m.def(
      "chi_transmon",
      [](double e_c, double e_j, double lambda_ghz, double omega_r_ghz,
         double n_g, int ncp, int n_levels) {
        TransmonParams p;
        p.E_C = e_c;
        p.E_J = e_j;
        p.n_g = n_g;
        return chi_dict(chi_transmon_numeric(p, to_angular(lambda_ghz),
                                             to_angular(omega_r_ghz), ncp,
                                             n_levels));
      },
      py::arg("E_C"), py::arg("E_J"), py::arg("lambda_GHz"),
      py::arg("omega_r_GHz"), py::arg("n_g") = 0.0, py::arg("ncp") = 20,
      py::arg("n_levels") = 10,
      "Parity-averaged transmon pull in MHz with the resonance margin.");

  m.def(
      "mt_operating",
      [](double e_c, double e_j, double e_m, double phi_x, double lambda_ghz,
         double delta_over_g) {
        const MTParams p = make_mt(e_c, e_j, e_m, phi_x, 0.0);
        const KerrApprox kerr = kerr_approximation(p);
        const double g_t = lambda_ghz * kerr.g_t_per_lambda;
        py::dict out;
        out["omega_t_GHz"] = kerr.omega_t;
        out["omega_plus_GHz"] = kerr.omega_plus;
        out["omega_mt_GHz"] = kerr.omega_mt;
        out["g_t_GHz"] = g_t;
        out["omega_r_GHz"] = kerr.omega_plus - delta_over_g * g_t;
        return out;
      },
      py::arg("E_C"), py::arg("E_J"), py::arg("E_M"), py::arg("phi_x") = 0.0,
      py::arg("lambda_GHz") = 0.1, py::arg("delta_over_g") = -10.0,
      "Closed-form operating point of the split-junction qubit.");

  m.def(
      "chi_mt",
      [](double e_c, double e_j, double e_m, double phi_x, double lambda_ghz,
         double omega_r_ghz, double n_g, int n_max, int k_levels) {
        const ChargeBasis basis(n_max);
        return chi_dict(chi_mt_numeric(make_mt(e_c, e_j, e_m, phi_x, n_g),
                                       to_angular(lambda_ghz),
                                       to_angular(omega_r_ghz), basis,
                                       k_levels));
      },
      py::arg("E_C"), py::arg("E_J"), py::arg("E_M"), py::arg("phi_x"),
      py::arg("lambda_GHz"), py::arg("omega_r_GHz"), py::arg("n_g") = 0.0,
      py::arg("n_max") = 30, py::arg("k_levels") = 12,
      "Parity-resolved pull of the split-junction qubit in MHz.");

  m.def(
      "box_block",
      [](double e_tot, double eps_dot, double n_g, double t_l, double t_r,
         double phi_x, int n) {
        const BlockSolution sol =
            block_solution(make_mb(e_tot, eps_dot, n_g, t_l, t_r, phi_x), n);
        py::dict out;
        out["n"] = sol.n;
        out["delta_n"] = sol.delta_n;
        out["f_plus"] = sol.f_plus;
        out["f_minus"] = sol.f_minus;
        out["eps_c"] = sol.eps_c;
        out["eps_m"] = sol.eps_m;
        out["E_n"] = sol.E_n;
        const auto levels = sol.levels();
        out["levels"] =
            std::vector<double>(levels.begin(), levels.end());
        return out;
      },
      py::arg("E_tot"), py::arg("eps_dot"), py::arg("n_g"), py::arg("t_L"),
      py::arg("t_R"), py::arg("phi_x"), py::arg("n") = 0,
      "Closed-form solution of one total-charge block, energies in GHz.");

  m.def(
      "box_omega_r",
      [](double e_tot, double eps_dot, double n_g, double t_l, double t_r,
         double phi_x, double lambda_ghz, double delta_over_g, int n) {
        const MBParams p = make_mb(e_tot, eps_dot, n_g, t_l, t_r, phi_x);
        const BlockSolution sol = block_solution(p, n);
        const BoxCouplings cpl = box_couplings(p, n, to_angular(lambda_ghz));
        return sol.f_plus -
               delta_over_g * to_linear(std::abs(cpl.g_plus));
      },
      py::arg("E_tot"), py::arg("eps_dot"), py::arg("n_g"), py::arg("t_L"),
      py::arg("t_R"), py::arg("phi_x"), py::arg("lambda_GHz"),
      py::arg("delta_over_g") = -10.0, py::arg("n") = 0,
      "Resonator frequency in GHz at the given detuning ratio.");

  m.def(
      "chi_mb",
      [](double e_tot, double eps_dot, double n_g, double t_l, double t_r,
         double phi_x, double lambda_ghz, double omega_r_ghz, int n) {
        const MBParams p = make_mb(e_tot, eps_dot, n_g, t_l, t_r, phi_x);
        const ChiResult num = chi_mb_numeric(p, to_angular(lambda_ghz),
                                             to_angular(omega_r_ghz), n);
        py::dict out = chi_dict(num);
        out["chi_analytic_MHz"] =
            to_linear(chi_mb_analytic(p, to_angular(lambda_ghz),
                                      to_angular(omega_r_ghz), n)) *
            1e3;
        return out;
      },
      py::arg("E_tot"), py::arg("eps_dot"), py::arg("n_g"), py::arg("t_L"),
      py::arg("t_R"), py::arg("phi_x"), py::arg("lambda_GHz"),
      py::arg("omega_r_GHz"), py::arg("n") = 0,
      "Parity-resolved pull of the box qubit, numeric and closed form.");

  m.def("fidelity_from_snr", &fidelity_from_snr, py::arg("snr"),
        "Single-shot assignment fidelity 1 - erfc(SNR/2).");

  m.def(
      "dispersive_tau_to_fidelity",
      [](double chi_mhz, double kappa_mhz, double target,
         double delta_over_g, double nbar_target_ratio) {
        DispersiveBudgetParams dp;
        dp.chi = to_angular(chi_mhz * 1e-3);
        dp.kappa = to_angular(kappa_mhz * 1e-3);
        dp.delta_over_g = delta_over_g;
        dp.nbar_target_ratio = nbar_target_ratio;
        dp.drive_amp = drive_from_photon_budget(dp.kappa, delta_over_g,
                                                nbar_target_ratio)
                           .drive_amp;
        return time_to_fidelity(
            [&](double tau) { return snr_dispersive(dp, tau); }, target);
      },
      py::arg("chi_MHz"), py::arg("kappa_MHz"), py::arg("target") = 0.9999,
      py::arg("delta_over_g") = 10.0, py::arg("nbar_target_ratio") = 0.2,
      "Integration time in microseconds to reach the target fidelity.");

  m.def(
      "longitudinal_tau_to_fidelity",
      [](double gz_tilde_mhz, double kappa_mhz, double target) {
        LongitudinalBudgetParams lp;
        lp.gz_tilde = to_angular(gz_tilde_mhz * 1e-3);
        lp.kappa = to_angular(kappa_mhz * 1e-3);
        return time_to_fidelity(
            [&](double tau) { return snr_longitudinal(lp, tau); }, target);
      },
      py::arg("gz_tilde_MHz"), py::arg("kappa_MHz"),
      py::arg("target") = 0.9999,
      "Integration time in microseconds for the modulated scheme.");
}
