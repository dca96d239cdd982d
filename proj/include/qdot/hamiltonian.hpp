#pragma once

#include <vector>

#include "qdot/cavity.hpp"
#include "qdot/composite.hpp"
#include "qdot/interp.hpp"
#include "qdot/stark.hpp"

namespace qdot {

// Tabulated electronic structure versus field, the interpolation layer
// between the Stark map and the time propagation.  Operating points are
// pinned as exact nodes so resonance conditions are not blurred by the
// piecewise-linear interpolation.
struct StarkTables {
    LinearInterp e10, e20, z01, z12, z02;
    double field_min = 0.0, field_max = 0.0;

    static StarkTables from_map(const StarkMap& map);
    void pin_operating_points(const OperatingPoints& points);
};

enum class ModelKind { full, effective };

// Shared frame constants of one simulation run.
struct FrameParams {
    double cavity_mev = 0.0;
    double laser_mev = 0.0;
    double e_vac_vpm = 0.0;
    double laser_field_kvpm = 0.0;
    double delta_omega_radns = 0.0;  // omega_l - omega_c
};

// Per-dot instantaneous drive condition.
struct DriveSpec {
    double field_mvpm = 0.0;
    bool laser_on = false;
    double laser_scale = 1.0;
};

// Per-dot rotating-frame coefficients (rad/ns).
struct DotCoeffs {
    double delta1 = 0.0, delta2 = 0.0;
    double g01 = 0.0, g12 = 0.0;
    double om01 = 0.0, om12 = 0.0;  // laser terms, already gated and scaled
    double otilde = 0.0;            // effective-model two-photon rate
};

DotCoeffs dot_coeffs(const StarkTables& tables, const FrameParams& frame, const DriveSpec& drive,
                     ModelKind model);

// Coupling topology of the composite system; the generator is the diagonal
// plus these entries and their conjugate transposes.
struct CouplingEntry {
    int i = 0, j = 0;        // i < j in the chosen convention, H(i,j) listed
    double photon_factor = 1.0;
    int dot = 0;
    int kind = 0;  // 0: g01 static, 1: om12 static, 2: om01 e^{+i dw t},
                   // 3: g12 e^{-i dw t}, 4: otilde static
};

struct GeneratorTopology {
    SystemLayout layout;
    ModelKind model = ModelKind::full;
    std::vector<CouplingEntry> entries;

    static GeneratorTopology build(const SystemLayout& layout, ModelKind model);
};

// Fills diag with the detuning diagonal for the given per-dot coefficients.
void build_diagonal(const SystemLayout& layout, const std::vector<DotCoeffs>& coeffs,
                    std::vector<double>& diag);

// out = -i H(t) in  (accumulating into out, which is zeroed first).
void apply_generator(const GeneratorTopology& topo, const std::vector<DotCoeffs>& coeffs,
                     const std::vector<double>& diag, double delta_omega, double t_ns,
                     const cplx* in, cplx* out);

// Dense H(t)/hbar in rad/ns, row-major, exactly Hermitian by construction.
// Convenience for assertions and small diagnostics.
std::vector<cplx> assemble_hamiltonian(const SystemLayout& layout, const StarkTables& tables,
                                       const FrameParams& frame,
                                       const std::vector<DriveSpec>& drives, ModelKind model,
                                       double t_ns);

}  // namespace qdot
