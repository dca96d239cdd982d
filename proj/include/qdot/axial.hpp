#pragma once

#include <vector>

#include "qdot/geometry.hpp"

namespace qdot {

// Lowest-k eigenpairs of the axial Schroedinger problem at one field value.
// Wavefunctions are sampled on the full grid (zero at the hard-wall
// endpoints) and unit-normalized under the trapezoid rule.
struct AxialSpectrum {
    double field_mvpm = 0.0;
    std::vector<double> energies_mev;             // ascending
    std::vector<std::vector<double>> wavefunctions;
    AxialGrid grid;

    double transition_mev(int i, int j) const { return energies_mev[j] - energies_mev[i]; }
};

// V(z) = V_stack(z) + field * z sampled on the grid, with the outer-barrier
// value in the padding region.  Throws ConfigError if the grid does not
// cover the stack.
std::vector<double> build_potential(const QDGeometry& geometry, double field_mvpm,
                                    const AxialGrid& grid);

// Lowest k eigenpairs of -(hbar^2/2m*) d2/dz2 + V(z) with hard walls, via a
// symmetric tridiagonal discretization (Sturm bisection + inverse iteration).
// Throws NumericError with diagnostics if the eigenvector iteration fails.
AxialSpectrum solve_axial(const std::vector<double>& potential_mev, const AxialGrid& grid,
                          double effective_mass_ratio, int k);

// Convenience: potential assembly + solve in one call.
AxialSpectrum solve_axial_at(const QDGeometry& geometry, const AxialGrid& grid,
                             double field_mvpm, int k);

// z_ij = <i| z |j> by the trapezoid rule, in nm.  Symmetric in (i, j).
double dipole_z(const AxialSpectrum& spectrum, int i, int j);

// <i| z^2 |i> in nm^2, used by the completeness check.
double expectation_z2(const AxialSpectrum& spectrum, int i);

// Overlap <a_i | b_j> of wavefunctions from two spectra on the same grid.
double wavefunction_overlap(const AxialSpectrum& a, int i, const AxialSpectrum& b, int j);

// Number of interior sign changes (Sturm oscillation count).
int count_nodes(const std::vector<double>& psi, double rel_threshold = 1e-6);

// 1 - |<psi | P psi>| where P is reflection about z = 0.
double parity_defect(const AxialSpectrum& spectrum, int i);

}  // namespace qdot
