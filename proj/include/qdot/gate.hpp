#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qdot/cavity.hpp"
#include "qdot/evolve.hpp"
#include "qdot/geometry.hpp"
#include "qdot/hamiltonian.hpp"
#include "qdot/pulse.hpp"

namespace qdot {

// Everything the gate-level operations need, built once per run.
struct GateContext {
    QDGeometry geometry;
    AxialGrid grid;
    CavityMode cavity;
    LaserDrive laser;
    OperatingPoints points;
    CouplingsSet couplings;
    StarkTables tables;

    FrameParams frame() const;
    static GateContext build(const QDGeometry& geometry, const AxialGrid& grid,
                             const StarkMap& map, const CavityMode& cavity,
                             const LaserDrive& laser);
};

struct CnotOptions {
    bool kernel_only = false;
    double rise_ns = 0.01;           // delta t, >> hbar/E10
    double onebit_laser_scale = 1.0; // attenuation for the e_l rotations
    double min_delay_ns = 1e-3;
    double delay_budget_ns = 2.0;
    int control_dot = 0;
    int target_dot = 1;
};

struct PlanInfo {
    double pi_pulse_ns = 0.0;        // control pulse duration pi/(2 g01)
    double two_photon_ns = 0.0;      // 2pi pulse duration pi/Otilde (nominal)
    double onebit_half_pi_ns = 0.0;  // pi/(4 Omega_l01), before attenuation
    double idle_phase_rate_radns = 0.0;  // Delta1(0)
    double residual_idle_phase_rad = 0.0;
    double residual_axis_phase_rad = 0.0;  // full CNOT laser-axis mismatch
    std::vector<std::string> warnings;
};

// The Fig.-3b program: laser pi/2 on the target at e_l, control pi at e_c,
// two-photon 2pi at e_lc, control pi, laser 3pi/2; kernel mode emits only
// the middle three.  Inter-segment delays are tuned so the idle |1> phase
// accumulated between the pulses is a multiple of 2 pi.
PulseSequence plan_cnot(const GateContext& ctx, const CnotOptions& options, PlanInfo* info = nullptr);

struct CalibrationResult {
    double field_mvpm = 0.0;       // two-photon plateau height after tuning
    double duration_ns = 0.0;      // measured 2pi time
    double otilde_eff_radns = 0.0;
    double stark_shift_mev = 0.0;  // bare-detuning offset absorbed by the tuning
    int probes = 0;
};

// Tunes the two-photon plateau against the dressed (AC-Stark shifted)
// resonance by probing the reduced one-dot system, then measures the 2pi
// return time.  Only meaningful for the full model.
CalibrationResult calibrate_two_photon(const GateContext& ctx, const CnotOptions& options,
                                       double dt_max_ns = 1e-3);

// Applies a calibration to the planned sequence (replaces the two-photon
// segment height/duration and re-solves the idle-phase delays).
void apply_calibration(PulseSequence& seq, const GateContext& ctx, const CnotOptions& options,
                       const CalibrationResult& cal, PlanInfo* info = nullptr);

struct GateReport {
    // truth[out][in] on the computational subspace (cavity vacuum);
    // column order |00>, |01>, |10>, |11>.
    std::array<std::array<cplx, 4>, 4> truth{};
    double fidelity_raw = 0.0;
    double fidelity_phase_opt = 0.0;
    double phi_control = 0.0, phi_target = 0.0;  // optimal Z phases
    double leakage_avg = 0.0, leakage_max = 0.0;
    double norm_drift_max = 0.0;
    bool kernel = false;
    ModelKind model = ModelKind::full;
    std::vector<double> segment_durations_ns;
    std::vector<double> segment_delays_ns;
    double total_ns = 0.0;
    std::optional<CalibrationResult> calibration;
    PlanInfo plan;
};

struct SimulateOptions {
    double dt_max_ns = 1e-3;
    bool parallel_columns = true;
};

// Propagates the four computational basis columns (cavity in vacuum) and
// scores the truth table against the ideal gate; kernel mode scores against
// diag(1,1,1,-1) with the control-path bookkeeping phases folded in.
GateReport simulate_gate(const GateContext& ctx, const PulseSequence& seq, ModelKind model,
                         const CnotOptions& options, const SimulateOptions& sim = {});

// Phase-optimized fidelity of a measured truth table against an ideal one,
// maximizing over per-qubit Z phases and a global phase.
double phase_optimized_fidelity(const std::array<std::array<cplx, 4>, 4>& truth,
                                const std::array<std::array<cplx, 4>, 4>& ideal,
                                double* phi_control = nullptr, double* phi_target = nullptr);

std::array<std::array<cplx, 4>, 4> ideal_kernel_truth();
std::array<std::array<cplx, 4>, 4> ideal_cnot_truth();

}  // namespace qdot
