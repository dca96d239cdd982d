#include "qdot/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

namespace {

// Largest frequency (rad/ns) a segment can excite: residual oscillation,
// couplings and the detuning diagonal at the fields it visits.
double segment_fmax(const PulseSegment& seg, const StarkTables& tables, const FrameParams& frame,
                    ModelKind model, int n_dots) {
    double fmax = 0.0;
    auto consider = [&](double e, bool laser_on) {
        DriveSpec d{e, laser_on, seg.laser_scale};
        const DotCoeffs c = dot_coeffs(tables, frame, d, model);
        fmax = std::max({fmax, std::abs(c.delta1), std::abs(c.delta2), std::abs(c.g01),
                         std::abs(c.g12), std::abs(c.om01), std::abs(c.om12),
                         std::abs(c.otilde)});
    };
    consider(0.0, seg.laser_on);
    consider(seg.target_field_mvpm, seg.laser_on);
    consider(0.5 * seg.target_field_mvpm, seg.laser_on);
    if (model == ModelKind::full) fmax = std::max(fmax, std::abs(frame.delta_omega_radns));
    (void)n_dots;
    return fmax;
}

struct Rk4Workspace {
    std::vector<cplx> k1, k2, k3, k4, tmp;
    std::vector<double> diag;
    std::vector<DotCoeffs> coeffs;
    double cached_field = -1.0;
    double cached_env = -1.0;

    void resize(int dim, int n_dots) {
        k1.resize(dim);
        k2.resize(dim);
        k3.resize(dim);
        k4.resize(dim);
        tmp.resize(dim);
        coeffs.resize(n_dots);
    }
};

}  // namespace

EvolveResult evolve(const CompositeState& initial, const PulseSequence& sequence,
                    const StarkTables& tables, const FrameParams& frame, ModelKind model,
                    const EvolveOptions& options) {
    sequence.validate();
    const SystemLayout layout = initial.layout;
    const int dim = layout.dim();
    if (static_cast<int>(initial.amps.size()) != dim)
        throw ConfigError("evolve: state dimension does not match layout");

    EvolveResult res;
    res.state = initial;
    res.state.frame = Frame::rotating;

    const auto topo = GeneratorTopology::build(layout, model);
    Rk4Workspace ws;
    ws.resize(dim, layout.n_dots);

    auto set_coeffs = [&](const PulseSegment& seg, double tloc) {
        const double env = seg.envelope_at(tloc);
        const double e_active = seg.target_field_mvpm * env;
        if (e_active == ws.cached_field && env == ws.cached_env) return;
        for (int d = 0; d < layout.n_dots; ++d) {
            DriveSpec spec;
            spec.field_mvpm = (d == seg.dot_id) ? e_active : 0.0;
            spec.laser_on = seg.laser_on && env > 0.0;
            spec.laser_scale = seg.laser_scale * env;
            ws.coeffs[d] = dot_coeffs(tables, frame, spec, model);
        }
        build_diagonal(layout, ws.coeffs, ws.diag);
        ws.cached_field = e_active;
        ws.cached_env = env;
    };

    auto deriv = [&](const PulseSegment& seg, double t_global, double t_local,
                     const std::vector<cplx>& in, std::vector<cplx>& out) {
        set_coeffs(seg, t_local);
        apply_generator(topo, ws.coeffs, ws.diag, frame.delta_omega_radns, t_global, in.data(),
                        out.data());
    };

    double t0 = 0.0;
    double next_sample = 0.0;
    auto take_sample = [&](double t) {
        TrajectorySample s;
        s.t_ns = t;
        s.populations.resize(dim);
        double ph = 0.0;
        for (int i = 0; i < dim; ++i) {
            s.populations[i] = std::norm(res.state.amps[i]);
            if (layout.photon_of(i) > 0) ph += s.populations[i];
        }
        s.photon_prob = ph;
        res.trajectory.push_back(std::move(s));
    };
    if (options.sample_every_ns > 0.0) take_sample(0.0);

    for (const auto& seg : sequence.segments) {
        const double duration = seg.duration_ns();
        if (duration <= 0.0) continue;
        const double fmax = segment_fmax(seg, tables, frame, model, layout.n_dots);
        double dt = options.dt_max_ns;
        if (fmax > 0.0) dt = std::min(dt, 1.0 / (50.0 * fmax));
        const long long nsteps = std::max<long long>(1, static_cast<long long>(std::ceil(duration / dt)));
        dt = duration / static_cast<double>(nsteps);

        ws.cached_field = -1.0;  // field profile restarts for this segment
        bool stop = false;
        for (long long s = 0; s < nsteps && !stop; ++s) {
            const double tl = s * dt;
            const double tg = t0 + tl;
            auto& y = res.state.amps;

            deriv(seg, tg, tl, y, ws.k1);
            for (int i = 0; i < dim; ++i) ws.tmp[i] = y[i] + 0.5 * dt * ws.k1[i];
            deriv(seg, tg + 0.5 * dt, tl + 0.5 * dt, ws.tmp, ws.k2);
            for (int i = 0; i < dim; ++i) ws.tmp[i] = y[i] + 0.5 * dt * ws.k2[i];
            deriv(seg, tg + 0.5 * dt, tl + 0.5 * dt, ws.tmp, ws.k3);
            for (int i = 0; i < dim; ++i) ws.tmp[i] = y[i] + dt * ws.k3[i];
            deriv(seg, tg + dt, tl + dt, ws.tmp, ws.k4);
            const double w = dt / 6.0;
            for (int i = 0; i < dim; ++i)
                y[i] += w * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
            ++res.steps;

            const double t_now = tg + dt;
            if (options.sample_every_ns > 0.0 && t_now >= next_sample) {
                take_sample(t_now);
                next_sample += options.sample_every_ns;
                if (options.monitor && !options.monitor(t_now, res.state)) {
                    stop = true;
                    res.stopped_early = true;
                }
            }
        }
        const double drift = std::abs(res.state.norm2() - 1.0);
        res.norm_drift_max = std::max(res.norm_drift_max, drift);
        if (drift > 1e-6) {
            std::ostringstream os;
            os << "evolve: norm drift " << drift << " exceeds 1e-6 after segment at t=" << t0
               << " ns (step-size failure; reduce dt_max)";
            throw NumericError(os.str());
        }
        if (stop) break;
        t0 += duration;
    }
    return res;
}

}  // namespace qdot
