#include "qdot/geometry.hpp"

#include <cmath>
#include <cstddef>

#include "qdot/errors.hpp"

namespace qdot {

double QDGeometry::stack_thickness_nm() const {
    double t = 0.0;
    for (const auto& l : layers) t += l.thickness_nm;
    return t;
}

bool QDGeometry::mirror_symmetric(double tol) const {
    const std::size_t n = layers.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const auto& a = layers[i];
        const auto& b = layers[n - 1 - i];
        if (std::abs(a.thickness_nm - b.thickness_nm) > tol) return false;
        if (std::abs(a.potential_mev - b.potential_mev) > tol) return false;
    }
    return true;
}

void QDGeometry::validate() const {
    if (layers.empty()) throw ConfigError("geometry: layer stack is empty");
    for (const auto& l : layers) {
        if (!(l.thickness_nm > 0.0) || !std::isfinite(l.thickness_nm))
            throw ConfigError("geometry: layer thicknesses must be positive and finite");
        if (!std::isfinite(l.potential_mev))
            throw ConfigError("geometry: layer potential must be finite");
    }
    if (!(radius_a_nm > 0.0) || !std::isfinite(radius_a_nm))
        throw ConfigError("geometry: radius_a must be positive");
    if (!(effective_mass_ratio > 0.0) || effective_mass_ratio > 1.0)
        throw ConfigError("geometry: effective_mass_ratio must be in (0, 1]");
}

QDGeometry QDGeometry::reference() {
    QDGeometry g;
    g.layers = {{10.0, 0.0}, {2.0, 65.0}, {17.0, 0.0}, {2.0, 65.0}, {10.0, 0.0}};
    g.radius_a_nm = 13.0;
    g.effective_mass_ratio = 1.0 / 15.0;
    return g;
}

void AxialGrid::validate() const {
    if (n_points < 2) throw ConfigError("grid: n_points must be >= 2");
    if (!(z_max_nm > z_min_nm)) throw ConfigError("grid: z_max must exceed z_min");
    if (!std::isfinite(boundary_potential_mev))
        throw ConfigError("grid: boundary potential must be finite");
}

AxialGrid AxialGrid::for_geometry(const QDGeometry& g, double padding_nm,
                                  double boundary_mev, int n_points) {
    const double half = g.stack_thickness_nm() / 2.0;
    AxialGrid grid;
    grid.z_min_nm = -(half + padding_nm);
    grid.z_max_nm = half + padding_nm;
    grid.n_points = n_points;
    grid.boundary_potential_mev = boundary_mev;
    grid.validate();
    return grid;
}

}  // namespace qdot
