#pragma once

#include <functional>

#include "qdot/composite.hpp"
#include "qdot/hamiltonian.hpp"
#include "qdot/pulse.hpp"

namespace qdot {

struct TrajectorySample {
    double t_ns = 0.0;
    std::vector<double> populations;  // |amplitude|^2 per basis state
    double photon_prob = 0.0;         // probability of at least one photon
};

struct EvolveOptions {
    double dt_max_ns = 1e-3;
    // Sampling interval for the trajectory record; 0 disables sampling.
    double sample_every_ns = 0.0;
    // Optional per-sample hook (used by calibration probes); return false
    // to stop the integration early.
    std::function<bool(double t_ns, const CompositeState&)> monitor;
};

struct EvolveResult {
    CompositeState state;
    double norm_drift_max = 0.0;
    long long steps = 0;
    std::vector<TrajectorySample> trajectory;
    bool stopped_early = false;
};

// Fixed-step RK4 integration of the rotating-frame Schroedinger equation
// through the pulse sequence.  The step obeys
//   dt <= min(dt_max, 1 / (50 f_max))
// with f_max the largest active frequency (residual oscillation, coupling
// rate or visited detuning) of the segment.  The norm is never renormalized;
// drift beyond 1e-6 raises NumericError.
EvolveResult evolve(const CompositeState& initial, const PulseSequence& sequence,
                    const StarkTables& tables, const FrameParams& frame, ModelKind model,
                    const EvolveOptions& options = {});

}  // namespace qdot
