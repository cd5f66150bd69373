#pragma once

namespace qdr {

// All energies are linear frequencies in GHz; phases in radians.

struct TransmonParams {
  double E_C = 0.25;
  double E_J = 12.5;
  double n_g = 0.0;
};

struct MTParams {
  double E_C = 0.25;
  double E_J = 12.5;
  double n_g = 0.0;
  double E_M = 0.0;
  double phi_x = 0.0;
};

// Microscopic model where the dot level sits outside the island and the
// Majorana couplings enter as explicit single-electron tunneling amplitudes.
struct IndirectMTParams {
  MTParams base;
  double eps_dot = 0.0;
  double t_L = 0.0;
  double t_R = 0.0;
};

struct MBParams {
  double E_tot = 2.5;
  double eps_dot = 2.5;
  double n_g = 0.0;
  double t_L = 0.0;
  double t_R = 0.0;
  double phi_x = 0.0;
};

}  // namespace qdr
