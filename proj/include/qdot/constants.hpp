#pragma once

// Internal unit system: energies in meV, lengths in nm, electric fields in
// MV/m, times in ns.  In these units the Stark term is just field * z,
// because q * (1 MV/m) * (1 nm) = 1e-3 eV exactly.
namespace qdot::constants {

inline constexpr double hbar_Js      = 1.054571817e-34;   // J s
inline constexpr double q_C          = 1.602176634e-19;   // C
inline constexpr double m_e_kg       = 9.1093837015e-31;  // kg
inline constexpr double eps0_Fm      = 8.8541878128e-12;  // F/m
inline constexpr double c_mps        = 2.99792458e8;      // m/s
inline constexpr double kB_mev_per_K = 8.6173332621e-2;   // meV/K

inline constexpr double mev_J        = 1.602176634e-22;     // J per meV
inline constexpr double hbar_mev_ns  = 6.582119565476e-4;   // meV ns
inline constexpr double mev_radns    = 1519.2674488095;     // rad/ns per meV
inline constexpr double hc_mev_nm    = 1.239841984332e6;    // meV nm

// hbar^2 / (2 m_e) in meV nm^2
inline constexpr double hbar2_over_2me = 38.0998211149;

}  // namespace qdot::constants
