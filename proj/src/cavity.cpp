#include "qdot/cavity.hpp"

#include <cmath>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

double CavityMode::wavelength_nm() const {
    return constants::hc_mev_nm / photon_energy_mev / refractive_index;
}

double CavityMode::minimal_volume_um3() const {
    const double half_um = wavelength_nm() / 2.0 * 1e-3;
    return half_um * half_um * half_um;
}

double CavityMode::effective_volume_um3() const {
    return volume_um3 > 0.0 ? volume_um3 : minimal_volume_um3();
}

void CavityMode::validate() const {
    if (!(photon_energy_mev > 0.0)) throw ConfigError("cavity: photon energy must be positive");
    if (!(refractive_index >= 1.0)) throw ConfigError("cavity: refractive index must be >= 1");
    if (fock_cutoff < 2) throw ConfigError("cavity: fock_cutoff must be >= 2");
    if (volume_um3 > 0.0 && volume_um3 < minimal_volume_um3() * (1.0 - 1e-12))
        throw ConfigError("cavity: volume below the minimal (lambda_c/2)^3");
}

void LaserDrive::validate() const {
    if (!(photon_energy_mev > 0.0)) throw ConfigError("laser: photon energy must be positive");
    if (field_amplitude_kvpm < 0.0) throw ConfigError("laser: amplitude must be >= 0");
}

double vacuum_field(const CavityMode& cavity) {
    cavity.validate();
    const double energy_J = cavity.photon_energy_mev * constants::mev_J;
    const double eps = cavity.refractive_index * cavity.refractive_index;
    const double volume_m3 = cavity.effective_volume_um3() * 1e-18;
    return std::sqrt(energy_J / (2.0 * constants::eps0_Fm * eps * volume_m3));
}

double vacuum_rabi(double z_nm, double e_vac_vpm) {
    // q z e_vac / hbar, converted from rad/s to rad/ns
    return constants::q_C * z_nm * 1e-9 * e_vac_vpm / constants::hbar_Js * 1e-9;
}

double laser_rabi(double z_nm, double field_kvpm) {
    return constants::q_C * z_nm * 1e-9 * field_kvpm * 1e3 / (2.0 * constants::hbar_Js) * 1e-9;
}

CouplingsSet make_couplings(const OperatingPoints& points, const CavityMode& cavity,
                            const LaserDrive& laser) {
    cavity.validate();
    laser.validate();

    CouplingsSet set;
    set.e_vac_vpm = vacuum_field(cavity);

    auto fill = [&](const OperatingPointInfo& p) {
        Couplings c;
        c.evaluated_at_mvpm = p.field_mvpm;
        c.g01 = vacuum_rabi(p.z01_nm, set.e_vac_vpm);
        c.g12 = vacuum_rabi(p.z12_nm, set.e_vac_vpm);
        c.omega_l01 = laser_rabi(p.z01_nm, laser.field_amplitude_kvpm);
        c.omega_l12 = laser_rabi(p.z12_nm, laser.field_amplitude_kvpm);
        return c;
    };
    set.at_ec = fill(points.at_ec);
    set.at_el = fill(points.at_el);
    set.at_elc = fill(points.at_elc);

    const double det_l = points.detuning_21_laser_mev * constants::mev_radns;
    const double det_c = points.detuning_21_cavity_mev * constants::mev_radns;
    const double guard = 1e-3;  // rad/ns
    if (std::abs(det_l) < guard || std::abs(det_c) < guard)
        throw NumericError(
            "make_couplings: two-photon detuning denominator is near zero; adjust the "
            "operating point (cavity/laser energies) away from the intermediate resonance");
    set.at_elc.otilde =
        set.at_elc.g01 * set.at_elc.omega_l12 / det_l + set.at_elc.g12 * set.at_elc.omega_l01 / det_c;
    return set;
}

}  // namespace qdot
