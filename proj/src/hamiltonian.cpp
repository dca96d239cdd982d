#include "qdot/hamiltonian.hpp"

#include <cmath>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

StarkTables StarkTables::from_map(const StarkMap& map) {
    if (map.rows.size() < 2) throw ConfigError("StarkTables: map too small");
    std::vector<double> f, e10, e20, z01, z12, z02;
    f.reserve(map.rows.size());
    for (const auto& r : map.rows) {
        f.push_back(r.field_mvpm);
        e10.push_back(r.e10_mev);
        e20.push_back(r.e20_mev);
        z01.push_back(r.z01_nm);
        z12.push_back(r.z12_nm);
        z02.push_back(r.z02_nm);
    }
    StarkTables t;
    t.field_min = f.front();
    t.field_max = f.back();
    t.e10 = LinearInterp(f, e10);
    t.e20 = LinearInterp(f, e20);
    t.z01 = LinearInterp(f, z01);
    t.z12 = LinearInterp(f, z12);
    t.z02 = LinearInterp(f, z02);
    return t;
}

void StarkTables::pin_operating_points(const OperatingPoints& points) {
    for (const OperatingPointInfo* p : {&points.at_ec, &points.at_el, &points.at_elc}) {
        const double f = p->field_mvpm;
        e10.pin(f, p->e10_mev);
        e20.pin(f, p->e20_mev);
        // Dipole signs follow the map's continuity convention; the stored
        // magnitudes are re-signed from the neighboring interpolant values.
        z01.pin(f, std::copysign(p->z01_nm, z01(f)));
        z12.pin(f, std::copysign(p->z12_nm, z12(f)));
        z02.pin(f, std::copysign(p->z02_nm, z02(f)));
    }
}

DotCoeffs dot_coeffs(const StarkTables& tables, const FrameParams& frame, const DriveSpec& drive,
                     ModelKind model) {
    const double e = drive.field_mvpm;
    DotCoeffs c;
    c.delta1 = (tables.e10(e) - frame.cavity_mev) * constants::mev_radns;
    c.delta2 = (tables.e20(e) - frame.laser_mev - frame.cavity_mev) * constants::mev_radns;
    const double z01 = tables.z01(e);
    const double z12 = tables.z12(e);
    c.g01 = vacuum_rabi(z01, frame.e_vac_vpm);
    c.g12 = vacuum_rabi(z12, frame.e_vac_vpm);
    const double laser = drive.laser_on ? frame.laser_field_kvpm * drive.laser_scale : 0.0;
    c.om01 = laser_rabi(z01, laser);
    c.om12 = laser_rabi(z12, laser);
    if (model == ModelKind::effective && drive.laser_on) {
        const double det_l = (tables.e20(e) - tables.e10(e) - frame.laser_mev) * constants::mev_radns;
        const double det_c = (tables.e20(e) - tables.e10(e) - frame.cavity_mev) * constants::mev_radns;
        const double guard = 1e-3;
        if (std::abs(det_l) < guard || std::abs(det_c) < guard)
            throw NumericError("dot_coeffs: two-photon detuning denominator near zero");
        c.otilde = c.g01 * c.om12 / det_l + c.g12 * c.om01 / det_c;
    }
    return c;
}

GeneratorTopology GeneratorTopology::build(const SystemLayout& layout, ModelKind model) {
    GeneratorTopology topo;
    topo.layout = layout;
    topo.model = model;
    const int dim = layout.dim();
    for (int d = 0; d < layout.n_dots; ++d) {
        const int sd = layout.dot_stride(d);
        for (int idx = 0; idx < dim; ++idx) {
            const int lvl = layout.level_of(idx, d);
            const int n = layout.photon_of(idx);
            if (model == ModelKind::full) {
                // g01 (a+ s01 + h.c.): |1, n> -> |0, n+1>
                if (lvl == 1 && n + 1 < layout.n_photon)
                    topo.entries.push_back({idx - sd + 1, idx, std::sqrt(n + 1.0), d, 0});
                // om12 (s12 + s21): |2, n> -> |1, n>
                if (lvl == 2) topo.entries.push_back({idx - sd, idx, 1.0, d, 1});
                // om01 (s01 e^{+i dw t} + h.c.): |1, n> -> |0, n>
                if (lvl == 1) topo.entries.push_back({idx - sd, idx, 1.0, d, 2});
                // g12 (a+ s12 e^{-i dw t} + h.c.): |2, n> -> |1, n+1>
                if (lvl == 2 && n + 1 < layout.n_photon)
                    topo.entries.push_back({idx - sd + 1, idx, std::sqrt(n + 1.0), d, 3});
            } else {
                // g01 stays resonant in the reduced model
                if (lvl == 1 && n + 1 < layout.n_photon)
                    topo.entries.push_back({idx - sd + 1, idx, std::sqrt(n + 1.0), d, 0});
                // otilde (a+ s02 + h.c.): |2, n> -> |0, n+1>
                if (lvl == 2 && n + 1 < layout.n_photon)
                    topo.entries.push_back({idx - 2 * sd + 1, idx, std::sqrt(n + 1.0), d, 4});
            }
        }
    }
    return topo;
}

void build_diagonal(const SystemLayout& layout, const std::vector<DotCoeffs>& coeffs,
                    std::vector<double>& diag) {
    const int dim = layout.dim();
    diag.assign(dim, 0.0);
    for (int d = 0; d < layout.n_dots; ++d) {
        const int sd = layout.dot_stride(d);
        for (int idx = 0; idx < dim; ++idx) {
            const int lvl = (idx / sd) % SystemLayout::n_levels;
            if (lvl == 1)
                diag[idx] += coeffs[d].delta1;
            else if (lvl == 2)
                diag[idx] += coeffs[d].delta2;
        }
    }
}

void apply_generator(const GeneratorTopology& topo, const std::vector<DotCoeffs>& coeffs,
                     const std::vector<double>& diag, double delta_omega, double t_ns,
                     const cplx* in, cplx* out) {
    const int dim = topo.layout.dim();
    const cplx mi{0.0, -1.0};
    for (int idx = 0; idx < dim; ++idx) out[idx] = mi * diag[idx] * in[idx];

    const cplx ep = std::polar(1.0, delta_omega * t_ns);
    const cplx em = std::conj(ep);
    for (const auto& e : topo.entries) {
        const DotCoeffs& c = coeffs[e.dot];
        cplx coeff;
        switch (e.kind) {
            case 0: coeff = c.g01 * e.photon_factor; break;
            case 1: coeff = c.om12; break;
            case 2: coeff = c.om01 * ep; break;
            case 3: coeff = c.g12 * e.photon_factor * em; break;
            default: coeff = c.otilde * e.photon_factor; break;
        }
        out[e.i] += mi * coeff * in[e.j];
        out[e.j] += mi * std::conj(coeff) * in[e.i];
    }
}

std::vector<cplx> assemble_hamiltonian(const SystemLayout& layout, const StarkTables& tables,
                                       const FrameParams& frame,
                                       const std::vector<DriveSpec>& drives, ModelKind model,
                                       double t_ns) {
    if (static_cast<int>(drives.size()) != layout.n_dots)
        throw ConfigError("assemble_hamiltonian: one DriveSpec per dot required");
    std::vector<DotCoeffs> coeffs;
    coeffs.reserve(drives.size());
    for (const auto& d : drives) coeffs.push_back(dot_coeffs(tables, frame, d, model));

    const int dim = layout.dim();
    std::vector<cplx> h(static_cast<std::size_t>(dim) * dim, cplx{0.0, 0.0});
    std::vector<double> diag;
    build_diagonal(layout, coeffs, diag);
    for (int i = 0; i < dim; ++i) h[static_cast<std::size_t>(i) * dim + i] = diag[i];

    const auto topo = GeneratorTopology::build(layout, model);
    const cplx ep = std::polar(1.0, frame.delta_omega_radns * t_ns);
    const cplx em = std::conj(ep);
    for (const auto& e : topo.entries) {
        const DotCoeffs& c = coeffs[e.dot];
        cplx coeff;
        switch (e.kind) {
            case 0: coeff = c.g01 * e.photon_factor; break;
            case 1: coeff = c.om12; break;
            case 2: coeff = c.om01 * ep; break;
            case 3: coeff = c.g12 * e.photon_factor * em; break;
            default: coeff = c.otilde * e.photon_factor; break;
        }
        h[static_cast<std::size_t>(e.i) * dim + e.j] += coeff;
        h[static_cast<std::size_t>(e.j) * dim + e.i] += std::conj(coeff);
    }
    return h;
}

}  // namespace qdot
