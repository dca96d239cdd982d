#pragma once

#include "qdot/stark.hpp"

namespace qdot {

struct CavityMode {
    double photon_energy_mev = 11.5;   // hbar omega_c
    double refractive_index = 3.6;     // epsilon = n^2
    double volume_um3 = 0.0;           // 0 = use the minimal volume (lambda_c/2)^3
    int fock_cutoff = 2;               // max photon number retained

    double wavelength_nm() const;      // lambda_c = (hc / E) / n
    double minimal_volume_um3() const; // (lambda_c / 2)^3
    double effective_volume_um3() const;
    void validate() const;
};

struct LaserDrive {
    double photon_energy_mev = 15.0;   // hbar omega_l
    double field_amplitude_kvpm = 30.7;  // peak classical amplitude at the dot

    void validate() const;
};

// e_vac = sqrt(hbar omega_c / (2 eps0 n^2 V)), in V/m.
double vacuum_field(const CavityMode& cavity);

// Eq-level coupling rates at one operating field, all in rad/ns.
struct Couplings {
    double evaluated_at_mvpm = 0.0;
    double g01 = 0.0;     // q z01 e_vac / hbar
    double g12 = 0.0;
    double omega_l01 = 0.0;  // q z01 E_laser / (2 hbar), half-amplitude convention
    double omega_l12 = 0.0;
    double otilde = 0.0;  // two-photon effective rate (only meaningful at e_lc)
};

struct CouplingsSet {
    Couplings at_ec, at_el, at_elc;
    double e_vac_vpm = 0.0;
};

// Couplings at the three operating fields.  Otilde combines the two
// second-order paths with the detunings recorded in OperatingPoints; a
// near-zero detuning denominator is a division hazard and throws.
CouplingsSet make_couplings(const OperatingPoints& points, const CavityMode& cavity,
                            const LaserDrive& laser);

// Single-transition helpers (rad/ns).
double vacuum_rabi(double z_nm, double e_vac_vpm);
double laser_rabi(double z_nm, double field_kvpm);

}  // namespace qdot
