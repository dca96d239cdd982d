#pragma once

#include <vector>

#include "qdot/geometry.hpp"

namespace qdot {

// l-th positive zero of the cylindrical Bessel function J_m (l >= 1).
double bessel_j_zero(int m, int l);

struct RadialLevel {
    double energy_mev = 0.0;
    int m = 0;  // azimuthal index
    int l = 0;  // radial index (1-based: l-th zero of J_m)
};

// In-plane spectrum of an infinite cylindrical wall:
// E(m, l) = x_{m,l}^2 hbar^2 / (2 m* a^2).
struct RadialSpectrum {
    std::vector<RadialLevel> levels;  // ascending
    double delta_e_r_mev = 0.0;       // first excited minus ground
    double ceiling_mev = 0.0;
    bool exceeds_ceiling = false;     // delta_e_r > ceiling
};

RadialSpectrum radial_spectrum(const QDGeometry& geometry, int n_levels,
                               double ceiling_mev = 0.0);

}  // namespace qdot
