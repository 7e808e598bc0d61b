#pragma once

#include <cmath>

namespace rotspin::units {

// The library computes in natural units (hbar = c = 1) with energies in eV.
// This layer holds the constants needed to move lab values in and results out.
inline constexpr double hbar_eVs = 6.582119569e-16;     // eV s
inline constexpr double hbarc_eVm = 197.3269804e-9;     // eV m
inline constexpr double hbar_SI = 1.054571817e-34;      // J s
inline constexpr double h_SI = 6.62607015e-34;          // J s
inline constexpr double c_SI = 2.99792458e8;            // m / s
inline constexpr double e_SI = 1.602176634e-19;         // C
inline constexpr double electron_mass_eV = 510998.95;   // eV

// qB for one elementary charge in a 1 T field, expressed in eV^2:
// (hbar c)^2 / l_B^2 with l_B^2 = hbar / (e B).
inline constexpr double qB_eV2_per_tesla = hbarc_eVm * hbarc_eVm * e_SI / hbar_SI;

inline double omega_eV(double omega_rad_per_s) { return hbar_eVs * omega_rad_per_s; }
inline double length_inv_eV(double meters) { return meters / hbarc_eVm; }
inline double momentum_eV(double k_inv_m) { return k_inv_m * hbarc_eVm; }

// A 2D spin current in natural units carries eV^2 (spin angular momentum in
// units of hbar is already inside the number via the hbar/2 trace weight).
// Restoring units: J_spin[J/m] = J_nat * hbar_SI * c_SI / (hbar c)^2.
inline double spin_current_2d_J_per_m(double value_eV2) {
  return value_eV2 * hbar_SI * c_SI / (hbarc_eVm * hbarc_eVm);
}

// Spin-to-charge conversion. A spin-hbar/2 carrier maps to charge q; dividing
// the angular-momentum flux by h/2 per carrier charge gives A/m. The h-based
// convention is the primary (documented) one; the hbar-based variant is
// reported alongside for comparison since the literature is not explicit.
inline double charge_current_A_per_m_h(double spin_current_J_per_m) {
  return spin_current_J_per_m * 2.0 * e_SI / h_SI;
}
inline double charge_current_A_per_m_hbar(double spin_current_J_per_m) {
  return spin_current_J_per_m * 2.0 * e_SI / hbar_SI;
}

}  // namespace rotspin::units
