#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdot/axial.hpp"
#include "qdot/geometry.hpp"

namespace qdot {

struct StarkMapRow {
    double field_mvpm = 0.0;
    double e10_mev = 0.0;
    double e20_mev = 0.0;
    double z01_nm = 0.0;  // signed, continuity convention along the sweep
    double z12_nm = 0.0;
    double z02_nm = 0.0;
};

struct StarkMap {
    std::vector<StarkMapRow> rows;  // ascending in field
    // Field intervals where overlap tracking was ambiguous (two overlaps
    // within 5% of each other).
    std::vector<std::pair<double, double>> ambiguous_intervals;
    std::string provenance;
};

struct SweepOptions {
    int tracked_levels = 6;
    bool parallel = true;
};

// Per-field spectra with adiabatic branch tracking: levels are matched to
// the previous field point by maximizing wavefunction overlap, not by raw
// energy order, and wavefunction signs are fixed by continuity.
StarkMap stark_map(const QDGeometry& geometry, const AxialGrid& grid, double field_lo,
                   double field_hi, int n_steps, const SweepOptions& options = {});

enum class Transition { e10, e20 };

// All fields where the tabulated transition crosses target_energy, each
// refined by bisection on fresh solves to |E - target| < 1e-4 meV.
// Throws NumericError naming the achievable range if no bracket exists.
std::vector<double> find_resonance_field(const StarkMap& map, const QDGeometry& geometry,
                                         const AxialGrid& grid, Transition transition,
                                         double target_mev);

struct OperatingPointInfo {
    double field_mvpm = 0.0;
    double e10_mev = 0.0;
    double e20_mev = 0.0;
    double z01_nm = 0.0;  // magnitudes
    double z12_nm = 0.0;
    double z02_nm = 0.0;
};

struct OperatingPoints {
    OperatingPointInfo at_ec;   // E10 = hbar omega_c
    OperatingPointInfo at_el;   // E10 = hbar omega_l
    OperatingPointInfo at_elc;  // E20 = hbar (omega_l + omega_c)
    double cavity_mev = 0.0;
    double laser_mev = 0.0;
    // Detunings at e_lc entering the two-photon rate.
    double detuning_21_laser_mev = 0.0;   // hbar omega_21 - hbar omega_l
    double detuning_21_cavity_mev = 0.0;  // hbar omega_21 - hbar omega_c
    std::vector<double> ec_candidates, el_candidates, elc_candidates;
};

// Bundles the three resonance fields with dipole elements and detunings.
// When a transition target has several crossings, the field that keeps E20
// farthest from the two-photon sum is selected (largest auxiliary-level
// margin); all candidates are reported.  Asserts |w21 - wl| < |w21 - wc|.
OperatingPoints operating_points(const QDGeometry& geometry, const AxialGrid& grid,
                                 const StarkMap& map, double cavity_mev, double laser_mev);

}  // namespace qdot
