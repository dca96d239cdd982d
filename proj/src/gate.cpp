#include "qdot/gate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

using std::numbers::pi;

FrameParams GateContext::frame() const {
    FrameParams f;
    f.cavity_mev = cavity.photon_energy_mev;
    f.laser_mev = laser.photon_energy_mev;
    f.e_vac_vpm = couplings.e_vac_vpm;
    f.laser_field_kvpm = laser.field_amplitude_kvpm;
    f.delta_omega_radns = (laser.photon_energy_mev - cavity.photon_energy_mev) * constants::mev_radns;
    return f;
}

GateContext GateContext::build(const QDGeometry& geometry, const AxialGrid& grid,
                               const StarkMap& map, const CavityMode& cavity,
                               const LaserDrive& laser) {
    GateContext ctx;
    ctx.geometry = geometry;
    ctx.grid = grid;
    ctx.cavity = cavity;
    ctx.laser = laser;
    ctx.points = operating_points(geometry, grid, map, cavity.photon_energy_mev,
                                  laser.photon_energy_mev);
    ctx.couplings = make_couplings(ctx.points, cavity, laser);
    ctx.tables = StarkTables::from_map(map);
    ctx.tables.pin_operating_points(ctx.points);
    return ctx;
}

namespace {

double wrap_to_pi(double x) {
    x = std::fmod(x, 2.0 * pi);
    if (x > pi) x -= 2.0 * pi;
    if (x < -pi) x += 2.0 * pi;
    return x;
}

// Integral of Delta1(e(t)) over one pulse (ramps by Simpson, plateau exact).
double idle_phase_over_pulse(const StarkTables& tables, const FrameParams& frame,
                             const PulseSegment& seg) {
    auto delta1 = [&](double e) {
        return (tables.e10(e) - frame.cavity_mev) * constants::mev_radns;
    };
    double phase = delta1(seg.target_field_mvpm) * seg.plateau_ns;
    if (seg.rise_ns > 0.0) {
        const int n = 128;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double u = static_cast<double>(i) / n;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * delta1(seg.target_field_mvpm * u);
        }
        acc *= seg.rise_ns / (3.0 * n);
        phase += 2.0 * acc;  // both ramps
    }
    return phase;
}

// Chooses the free inter-segment delays so the idle |1> phase between the
// outer laser pulses is a multiple of 2 pi; for the full gate the remaining
// discrete freedom also aligns the laser axis (Delta_omega * window mod 2pi).
void solve_delays(PulseSequence& seq, const GateContext& ctx, const CnotOptions& opt,
                  PlanInfo* info) {
    const FrameParams frame = ctx.frame();
    const bool kernel = seq.segments.size() == 3;
    const std::size_t i2p = kernel ? 1 : 2;
    auto& segs = seq.segments;

    const double delta1_0 = (ctx.tables.e10(0.0) - frame.cavity_mev) * constants::mev_radns;
    if (info) info->idle_phase_rate_radns = delta1_0;

    // Fixed idle window pieces (everything between the free delays).
    double fixed = segs[i2p - 1].pulse_ns() + segs[i2p + 1].pulse_ns();
    if (!kernel) fixed += segs[0].post_delay_ns + segs[3].post_delay_ns;
    const double phi_self = idle_phase_over_pulse(ctx.tables, frame, segs[i2p]);
    const double phi_rest = delta1_0 * fixed + phi_self;

    if (std::abs(delta1_0) < 1e-6) {
        segs[i2p - 1].post_delay_ns = opt.min_delay_ns;
        segs[i2p].post_delay_ns = opt.min_delay_ns;
        if (info) info->residual_idle_phase_rad = wrap_to_pi(phi_rest);
        return;
    }

    const double period = 2.0 * pi / std::abs(delta1_0);
    double r = std::fmod(-phi_rest / delta1_0, period);
    if (r < 0.0) r += period;
    double d_tot = r;
    while (d_tot < 2.0 * opt.min_delay_ns) d_tot += period;

    double best_axis = 0.0;
    if (!kernel) {
        // The laser axis advances at Delta_omega over the whole idle window;
        // scan the 2pi-equivalent delay ladder for the best simultaneous fit.
        const double window_base = fixed + segs[i2p].pulse_ns();
        double best = 1e30;
        double best_d = d_tot;
        for (double d = d_tot; d <= d_tot + opt.delay_budget_ns; d += period) {
            const double axis = std::abs(wrap_to_pi(frame.delta_omega_radns * (window_base + d)));
            if (axis < best) {
                best = axis;
                best_d = d;
            }
        }
        d_tot = best_d;
        best_axis = best;
        if (info) {
            info->residual_axis_phase_rad = best_axis;
            if (best_axis > 0.05)
                info->warnings.push_back(
                    "phase compensation: laser-axis residual " + std::to_string(best_axis) +
                    " rad exceeds 0.05 rad within the delay budget");
        }
    }
    segs[i2p - 1].post_delay_ns = 0.5 * d_tot;
    segs[i2p].post_delay_ns = 0.5 * d_tot;
    if (info) info->residual_idle_phase_rad = 0.0;
}

}  // namespace

PulseSequence plan_cnot(const GateContext& ctx, const CnotOptions& opt, PlanInfo* info) {
    const auto& cp = ctx.couplings;
    if (!(cp.at_ec.g01 > 0.0) || !(std::abs(cp.at_elc.otilde) > 0.0) || !(cp.at_el.omega_l01 > 0.0))
        throw NumericError("plan_cnot: couplings must be computed at all three operating fields");

    const double t_pi = pi / (2.0 * cp.at_ec.g01);
    const double t_2photon = pi / std::abs(cp.at_elc.otilde);
    const double t_quarter = pi / (4.0 * cp.at_el.omega_l01 * opt.onebit_laser_scale);
    if (info) {
        info->pi_pulse_ns = t_pi;
        info->two_photon_ns = t_2photon;
        info->onebit_half_pi_ns = pi / (4.0 * cp.at_el.omega_l01);
    }

    PulseSequence seq;
    auto make = [&](int dot, double field, double plateau, bool laser, double scale,
                    const std::string& label) {
        PulseSegment s;
        s.dot_id = dot;
        s.target_field_mvpm = field;
        s.plateau_ns = plateau;
        s.rise_ns = opt.rise_ns;
        s.laser_on = laser;
        s.laser_scale = scale;
        s.post_delay_ns = opt.min_delay_ns;
        s.label = label;
        return s;
    };

    if (!opt.kernel_only) {
        seq.segments.push_back(make(opt.target_dot, ctx.points.at_el.field_mvpm, t_quarter, true,
                                    opt.onebit_laser_scale, "target pi/2 at e_l"));
    }
    seq.segments.push_back(
        make(opt.control_dot, ctx.points.at_ec.field_mvpm, t_pi, false, 1.0, "control pi at e_c"));
    seq.segments.push_back(make(opt.target_dot, ctx.points.at_elc.field_mvpm, t_2photon, true, 1.0,
                                "target two-photon 2pi at e_lc"));
    seq.segments.push_back(
        make(opt.control_dot, ctx.points.at_ec.field_mvpm, t_pi, false, 1.0, "control pi at e_c"));
    if (!opt.kernel_only) {
        seq.segments.push_back(make(opt.target_dot, ctx.points.at_el.field_mvpm, 3.0 * t_quarter,
                                    true, opt.onebit_laser_scale, "target 3pi/2 at e_l"));
    }
    seq.segments.back().post_delay_ns = 0.0;

    solve_delays(seq, ctx, opt, info);
    return seq;
}

namespace {

struct ProbeOutcome {
    double max_p2 = 0.0;
    double t_peak_ns = 0.0;
    double t_first_min_ns = 0.0;  // 0 if not observed
};

// Hold the reduced one-dot system at field e with the laser on and track
// the |0, 1 photon> -> |2, 0 photon> transfer.
ProbeOutcome run_probe(const GateContext& ctx, double field, double t_hold_ns, double dt_max,
                       bool need_first_min) {
    SystemLayout layout;
    layout.n_dots = 1;
    layout.n_photon = ctx.cavity.fock_cutoff + 1;
    CompositeState init = CompositeState::basis(layout, {0}, 1);
    const int idx2 = layout.index({2}, 0);

    PulseSequence seq;
    PulseSegment hold;
    hold.dot_id = 0;
    hold.target_field_mvpm = field;
    hold.plateau_ns = t_hold_ns;
    hold.rise_ns = 0.0;
    hold.laser_on = true;
    hold.label = "two-photon probe hold";
    seq.segments.push_back(hold);

    std::vector<std::pair<double, double>> samples;
    samples.reserve(5000);
    samples.emplace_back(0.0, 0.0);
    double max_p2 = 0.0, t_at_max = 0.0;

    EvolveOptions opts;
    opts.dt_max_ns = dt_max;
    opts.sample_every_ns = t_hold_ns / 4096.0;
    opts.monitor = [&](double t, const CompositeState& st) {
        const double p2 = std::norm(st.amps[idx2]);
        samples.emplace_back(t, p2);
        if (p2 > max_p2) {
            max_p2 = p2;
            t_at_max = t;
        }
        if (!need_first_min && max_p2 > 1e-12 && t > t_at_max + 0.12 * t_hold_ns &&
            p2 < 0.5 * max_p2)
            return false;  // past the first peak, enough information
        return true;
    };
    evolve(init, seq, ctx.tables, ctx.frame(), ModelKind::full, opts);

    ProbeOutcome out;
    // Parabolic refinement around the first peak close to the global max.
    std::size_t ip = 0;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        if (samples[i].second >= samples[i - 1].second &&
            samples[i].second >= samples[i + 1].second &&
            samples[i].second > 0.9 * max_p2) {
            ip = i;
            break;
        }
    }
    if (ip == 0) {
        out.max_p2 = max_p2;
        out.t_peak_ns = t_at_max;
        return out;
    }
    const auto refine = [&](std::size_t i, bool minimum) {
        const double y0 = samples[i - 1].second, y1 = samples[i].second,
                     y2 = samples[i + 1].second;
        const double h = samples[i + 1].first - samples[i].first;
        const double denom = y0 - 2.0 * y1 + y2;
        double shift = 0.0;
        if (std::abs(denom) > 1e-300) shift = 0.5 * (y0 - y2) / denom;
        shift = std::clamp(shift, -1.0, 1.0);
        (void)minimum;
        return std::make_pair(samples[i].first + shift * h,
                              y1 - 0.25 * (y0 - y2) * shift);
    };
    auto [tp, vp] = refine(ip, false);
    out.t_peak_ns = tp;
    out.max_p2 = vp;
    if (need_first_min) {
        for (std::size_t i = ip + 1; i + 1 < samples.size(); ++i) {
            if (samples[i].second <= samples[i - 1].second &&
                samples[i].second <= samples[i + 1].second &&
                samples[i].second < 0.5 * max_p2) {
                out.t_first_min_ns = refine(i, true).first;
                break;
            }
        }
    }
    return out;
}

// Static three-state block {|0,1ph>, |1,0ph>, |2,0ph>}: the dressed
// two-photon gap locates the AC-Stark shifted resonance analytically.
double dressed_gap(const GateContext& ctx, double e) {
    DriveSpec spec{e, true, 1.0};
    const DotCoeffs c = dot_coeffs(ctx.tables, ctx.frame(), spec, ModelKind::full);
    const double h[3][3] = {{0.0, c.g01, 0.0},
                            {c.g01, c.delta1, c.om12},
                            {0.0, c.om12, c.delta2}};
    // Eigenvalues of a symmetric 3x3 via the trigonometric closed form.
    const double q = (h[0][0] + h[1][1] + h[2][2]) / 3.0;
    const double a00 = h[0][0] - q, a11 = h[1][1] - q, a22 = h[2][2] - q;
    const double p2 = a00 * a00 + a11 * a11 + a22 * a22 +
                      2.0 * (h[0][1] * h[0][1] + h[0][2] * h[0][2] + h[1][2] * h[1][2]);
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-300) return 0.0;
    // det of (A - qI)/p
    const double b00 = a00 / p, b11 = a11 / p, b22 = a22 / p;
    const double b01 = h[0][1] / p, b02 = h[0][2] / p, b12 = h[1][2] / p;
    double detb = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                  b02 * (b01 * b12 - b11 * b02);
    detb = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(detb) / 3.0;
    double lam[3];
    lam[0] = q + 2.0 * p * std::cos(phi);
    lam[2] = q + 2.0 * p * std::cos(phi + 2.0 * pi / 3.0);
    lam[1] = 3.0 * q - lam[0] - lam[2];
    // Drop the eigenvalue adiabatically connected to the far-detuned
    // intermediate |1, 0ph> (the one closest to delta1).
    int drop = 0;
    double dist = 1e300;
    for (int i = 0; i < 3; ++i) {
        const double d = std::abs(lam[i] - c.delta1);
        if (d < dist) {
            dist = d;
            drop = i;
        }
    }
    double kept[2];
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != drop) kept[k++] = lam[i];
    return std::abs(kept[0] - kept[1]);
}

}  // namespace

CalibrationResult calibrate_two_photon(const GateContext& ctx, const CnotOptions& opt,
                                       double dt_max_ns) {
    (void)opt;
    const double e0 = ctx.points.at_elc.field_mvpm;
    const double otilde_nom = std::abs(ctx.couplings.at_elc.otilde);
    if (!(otilde_nom > 0.0)) throw NumericError("calibrate_two_photon: vanishing nominal rate");
    const double t_hold = 1.35 * pi / otilde_nom;

    // Stage 1: analytic pre-centering on the dressed-gap minimum.
    double lo = e0 - 0.01, hi = e0 + 0.01;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = dressed_gap(ctx, x1), f2 = dressed_gap(ctx, x2);
    while (hi - lo > 1e-8) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = dressed_gap(ctx, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = dressed_gap(ctx, x2);
        }
    }
    const double e_pre = 0.5 * (lo + hi);

    // Stage 2: dynamic probes.  |detuning| = 2 W sqrt(1 - M) with
    // W = pi / (2 t_peak) and M the peak transfer; the V-shaped
    // |detuning(e)| is minimized by golden section.
    CalibrationResult cal;
    auto measure = [&](double e) {
        const ProbeOutcome p = run_probe(ctx, e, t_hold, dt_max_ns, false);
        ++cal.probes;
        const double w = pi / (2.0 * std::max(p.t_peak_ns, 1e-9));
        const double m = std::clamp(p.max_p2, 0.0, 1.0);
        return 2.0 * w * std::sqrt(std::max(0.0, 1.0 - m));
    };

    double a = e_pre - 0.0015, b = e_pre + 0.0015;
    double xa = b - gr * (b - a), xb = a + gr * (b - a);
    double da = measure(xa), db = measure(xb);
    while (b - a > 4e-7) {
        if (da < db) {
            b = xb;
            xb = xa;
            db = da;
            xa = b - gr * (b - a);
            da = measure(xa);
        } else {
            a = xa;
            xa = xb;
            da = db;
            xb = a + gr * (b - a);
            db = measure(xb);
        }
    }
    const double e_star = da < db ? xa : xb;

    const ProbeOutcome fin = run_probe(ctx, e_star, t_hold, dt_max_ns, true);
    ++cal.probes;
    cal.field_mvpm = e_star;
    cal.duration_ns = fin.t_first_min_ns > 0.0 ? fin.t_first_min_ns : 2.0 * fin.t_peak_ns;
    cal.otilde_eff_radns = pi / cal.duration_ns;
    cal.stark_shift_mev = ctx.tables.e20(e_star) - (ctx.cavity.photon_energy_mev +
                                                    ctx.laser.photon_energy_mev);
    return cal;
}

void apply_calibration(PulseSequence& seq, const GateContext& ctx, const CnotOptions& opt,
                       const CalibrationResult& cal, PlanInfo* info) {
    const std::size_t i2p = seq.segments.size() == 3 ? 1 : 2;
    seq.segments[i2p].target_field_mvpm = cal.field_mvpm;
    seq.segments[i2p].plateau_ns = cal.duration_ns;
    solve_delays(seq, ctx, opt, info);
}

std::array<std::array<cplx, 4>, 4> ideal_kernel_truth() {
    std::array<std::array<cplx, 4>, 4> u{};
    u[0][0] = 1.0;
    u[1][1] = 1.0;
    u[2][2] = 1.0;
    u[3][3] = -1.0;
    return u;
}

std::array<std::array<cplx, 4>, 4> ideal_cnot_truth() {
    std::array<std::array<cplx, 4>, 4> u{};
    u[0][0] = 1.0;
    u[1][1] = 1.0;
    u[3][2] = 1.0;  // |10> -> |11>
    u[2][3] = 1.0;  // |11> -> |10>
    return u;
}

double phase_optimized_fidelity(const std::array<std::array<cplx, 4>, 4>& truth,
                                const std::array<std::array<cplx, 4>, 4>& ideal,
                                double* phi_control, double* phi_target) {
    std::array<cplx, 4> c{};
    std::array<int, 4> aout{}, bout{};
    for (int k = 0; k < 4; ++k) {
        for (int out = 0; out < 4; ++out) {
            if (std::abs(ideal[out][k]) == 0.0) continue;
            c[k] += std::conj(ideal[out][k]) * truth[out][k];
            aout[k] = out >> 1;
            bout[k] = out & 1;
        }
    }
    auto value = [&](double pa, double pb) {
        cplx s{0.0, 0.0};
        for (int k = 0; k < 4; ++k) s += c[k] * std::polar(1.0, -(pa * aout[k] + pb * bout[k]));
        return std::abs(s);
    };
    double best = -1.0, ba = 0.0, bb = 0.0;
    const int n = 72;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double pa = 2.0 * pi * i / n, pb = 2.0 * pi * j / n;
            const double v = value(pa, pb);
            if (v > best) {
                best = v;
                ba = pa;
                bb = pb;
            }
        }
    }
    double span = 2.0 * pi / n;
    for (int round = 0; round < 40; ++round) {
        bool improved = false;
        for (const auto& [da, db] : {std::pair{span, 0.0}, {-span, 0.0}, {0.0, span}, {0.0, -span}}) {
            const double v = value(ba + da, bb + db);
            if (v > best) {
                best = v;
                ba += da;
                bb += db;
                improved = true;
            }
        }
        if (!improved) span *= 0.5;
        if (span < 1e-9) break;
    }
    if (phi_control) *phi_control = ba;
    if (phi_target) *phi_target = bb;
    return (best / 4.0) * (best / 4.0);
}

GateReport simulate_gate(const GateContext& ctx, const PulseSequence& seq, ModelKind model,
                         const CnotOptions& opt, const SimulateOptions& sim) {
    SystemLayout layout;
    layout.n_dots = 2;
    layout.n_photon = ctx.cavity.fock_cutoff + 1;
    const FrameParams frame = ctx.frame();

    auto run_column = [&](int a, int b) {
        std::vector<int> levels(2, 0);
        levels[opt.control_dot] = a;
        levels[opt.target_dot] = b;
        CompositeState init = CompositeState::basis(layout, levels, 0);
        EvolveOptions eopt;
        eopt.dt_max_ns = sim.dt_max_ns;
        return evolve(init, seq, ctx.tables, frame, model, eopt);
    };

    std::array<EvolveResult, 4> cols;
    if (sim.parallel_columns) {
        std::array<std::future<EvolveResult>, 4> futs;
        for (int k = 0; k < 4; ++k)
            futs[k] = std::async(std::launch::async, run_column, k >> 1, k & 1);
        for (int k = 0; k < 4; ++k) cols[k] = futs[k].get();
    } else {
        for (int k = 0; k < 4; ++k) cols[k] = run_column(k >> 1, k & 1);
    }

    GateReport rep;
    rep.kernel = opt.kernel_only;
    rep.model = model;
    for (const auto& s : seq.segments) {
        rep.segment_durations_ns.push_back(s.pulse_ns());
        rep.segment_delays_ns.push_back(s.post_delay_ns);
    }
    rep.total_ns = seq.total_ns();

    for (int k = 0; k < 4; ++k) {
        rep.norm_drift_max = std::max(rep.norm_drift_max, cols[k].norm_drift_max);
        double in_comp = 0.0;
        for (int out = 0; out < 4; ++out) {
            std::vector<int> levels(2, 0);
            levels[opt.control_dot] = out >> 1;
            levels[opt.target_dot] = out & 1;
            const int idx = layout.index(levels, 0);
            rep.truth[out][k] = cols[k].state.amps[idx];
            in_comp += std::norm(rep.truth[out][k]);
        }
        const double leak = 1.0 - in_comp;
        rep.leakage_avg += leak / 4.0;
        rep.leakage_max = std::max(rep.leakage_max, leak);
    }

    const auto ideal = opt.kernel_only ? ideal_kernel_truth() : ideal_cnot_truth();
    cplx tr{0.0, 0.0};
    for (int k = 0; k < 4; ++k)
        for (int out = 0; out < 4; ++out) tr += std::conj(ideal[out][k]) * rep.truth[out][k];
    rep.fidelity_raw = std::norm(tr / 4.0);
    rep.fidelity_phase_opt =
        phase_optimized_fidelity(rep.truth, ideal, &rep.phi_control, &rep.phi_target);
    return rep;
}

}  // namespace qdot
