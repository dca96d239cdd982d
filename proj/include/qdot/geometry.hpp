#pragma once

#include <vector>

namespace qdot {

struct Layer {
    double thickness_nm = 0.0;
    double potential_mev = 0.0;
};

// Axial layer stack of a gated triple-well dot plus its radial extent.
// The reference geometry is the 41 nm stack: 10/2/17/2/10 nm layers with
// 65 meV barriers, radius 13 nm, m*/m_e = 1/15.
struct QDGeometry {
    std::vector<Layer> layers;
    double radius_a_nm = 13.0;
    double effective_mass_ratio = 1.0 / 15.0;

    double stack_thickness_nm() const;
    bool mirror_symmetric(double tol = 1e-12) const;
    void validate() const;  // throws ConfigError

    static QDGeometry reference();
};

// Uniform grid over [z_min, z_max] with z = 0 at the stack midpoint.
// Outside the stack the potential is boundary_potential_mev (the outer
// barrier) up to the grid edge, where a hard wall is imposed.
struct AxialGrid {
    double z_min_nm = 0.0;
    double z_max_nm = 0.0;
    int n_points = 0;
    double boundary_potential_mev = 300.0;

    double spacing_nm() const { return (z_max_nm - z_min_nm) / (n_points - 1); }
    double z(int i) const { return z_min_nm + i * spacing_nm(); }
    void validate() const;

    static AxialGrid for_geometry(const QDGeometry& g, double padding_nm = 20.0,
                                  double boundary_mev = 300.0, int n_points = 4096);
};

}  // namespace qdot
