// Command-line front end: reproduces the device's headline numbers from a
// single config file (all defaults are the reference parameters).
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdot/budgets.hpp"
#include "qdot/config.hpp"
#include "qdot/constants.hpp"
#include "qdot/csv.hpp"
#include "qdot/errors.hpp"
#include "qdot/gate.hpp"
#include "qdot/phonon.hpp"
#include "qdot/radial.hpp"
#include "qdot/stark.hpp"

using nlohmann::json;
using namespace qdot;

namespace {

json base_report(const RunConfig& cfg) {
    json j;
    j["config"] = cfg.to_json();
    j["config_hash"] = config_hash(cfg);
    return j;
}

void write_report(const RunConfig& cfg, const std::string& name, const json& j) {
    ensure_directory(cfg.output_dir);
    write_text_file(cfg.output_dir + "/" + name, j.dump(2) + "\n");
}

StarkMap run_sweep(const RunConfig& cfg) {
    return stark_map(cfg.geometry, cfg.axial_grid(), cfg.sweep.field_lo_mvpm,
                     cfg.sweep.field_hi_mvpm, cfg.sweep.n_steps);
}

int cmd_stark_map(const RunConfig& cfg, const std::optional<double>& dump_at) {
    const auto grid = cfg.axial_grid();
    const auto map = run_sweep(cfg);
    ensure_directory(cfg.output_dir);

    CsvWriter csv(cfg.output_dir + "/stark_map.csv",
                  {"e_MVpm", "E10_meV", "E20_meV", "z01_nm", "z12_nm", "z02_nm"});
    for (const auto& r : map.rows)
        csv.row({r.field_mvpm, r.e10_mev, r.e20_mev, r.z01_nm, r.z12_nm, r.z02_nm});
    csv.close();

    if (dump_at) {
        const auto spec = solve_axial_at(cfg.geometry, grid, *dump_at, 4);
        const auto pot = build_potential(cfg.geometry, *dump_at, grid);
        CsvWriter sc(cfg.output_dir + "/spectrum.csv",
                     {"z_nm", "V_meV", "psi0", "psi1", "psi2", "psi3"});
        for (int i = 0; i < grid.n_points; ++i)
            sc.row({grid.z(i), pot[i], spec.wavefunctions[0][i], spec.wavefunctions[1][i],
                    spec.wavefunctions[2][i], spec.wavefunctions[3][i]});
        sc.close();
    }

    const auto& r0 = map.rows.front();
    std::cout << "stark map: " << map.rows.size() << " fields in [" << format_g6(r0.field_mvpm)
              << ", " << format_g6(map.rows.back().field_mvpm) << "] MV/m -> " << cfg.output_dir
              << "/stark_map.csv\n";
    std::cout << "anchors at e=" << format_g6(r0.field_mvpm) << ": E10 = " << format_g6(r0.e10_mev)
              << " meV, E20 = " << format_g6(r0.e20_mev) << " meV, z01 = " << format_g6(r0.z01_nm)
              << " nm\n";
    if (!map.ambiguous_intervals.empty())
        std::cout << "warning: " << map.ambiguous_intervals.size()
                  << " field interval(s) with ambiguous branch tracking\n";

    json rep = base_report(cfg);
    rep["provenance"] = map.provenance;
    rep["anchor_e0"] = {{"E10_meV", r0.e10_mev}, {"E20_meV", r0.e20_mev}};
    write_report(cfg, "stark_map_report.json", rep);
    return 0;
}

int cmd_operating_points(const RunConfig& cfg) {
    const auto grid = cfg.axial_grid();
    const auto map = run_sweep(cfg);
    const auto ctx = GateContext::build(cfg.geometry, grid, map, cfg.cavity, cfg.laser);
    const auto& p = ctx.points;
    const auto& cp = ctx.couplings;

    auto print_point = [](const char* name, const OperatingPointInfo& i) {
        std::cout << name << ": e = " << format_g6(i.field_mvpm)
                  << " MV/m, E10 = " << format_g6(i.e10_mev)
                  << " meV, E20 = " << format_g6(i.e20_mev)
                  << " meV, z01 = " << format_g6(i.z01_nm)
                  << " nm, z12 = " << format_g6(i.z12_nm) << " nm\n";
    };
    print_point("e_c  (E10 = hw_c)      ", p.at_ec);
    print_point("e_l  (E10 = hw_l)      ", p.at_el);
    print_point("e_lc (E20 = hw_l+hw_c) ", p.at_elc);
    std::cout << "detunings at e_lc: w21-wl = " << format_g6(p.detuning_21_laser_mev)
              << " meV, w21-wc = " << format_g6(p.detuning_21_cavity_mev) << " meV\n";
    std::cout << "e_vac = " << format_g6(cp.e_vac_vpm) << " V/m\n";
    std::cout << "g01(e_c) = " << format_g6(cp.at_ec.g01)
              << " rad/ns  -> pi pulse " << format_g6(std::numbers::pi / (2.0 * cp.at_ec.g01))
              << " ns\n";
    std::cout << "Otilde(e_lc) = " << format_g6(std::abs(cp.at_elc.otilde))
              << " rad/ns -> 2pi two-photon pulse "
              << format_g6(std::numbers::pi / std::abs(cp.at_elc.otilde)) << " ns\n";

    json rep = base_report(cfg);
    auto pt = [](const OperatingPointInfo& i) {
        return json{{"field_mvpm", i.field_mvpm}, {"e10_mev", i.e10_mev},
                    {"e20_mev", i.e20_mev},       {"z01_nm", i.z01_nm},
                    {"z12_nm", i.z12_nm},         {"z02_nm", i.z02_nm}};
    };
    rep["e_c"] = pt(p.at_ec);
    rep["e_l"] = pt(p.at_el);
    rep["e_lc"] = pt(p.at_elc);
    rep["candidates"] = {{"e_c", p.ec_candidates}, {"e_l", p.el_candidates},
                         {"e_lc", p.elc_candidates}};
    rep["detuning_21_laser_mev"] = p.detuning_21_laser_mev;
    rep["detuning_21_cavity_mev"] = p.detuning_21_cavity_mev;
    rep["e_vac_vpm"] = cp.e_vac_vpm;
    rep["g01_ec_radns"] = cp.at_ec.g01;
    rep["otilde_elc_radns"] = cp.at_elc.otilde;
    write_report(cfg, "operating_points_report.json", rep);
    return 0;
}

int cmd_phonon(const RunConfig& cfg, const std::optional<double>& e10_override,
               const std::optional<std::vector<double>>& sweep_spec) {
    const double e10 = e10_override.value_or(cfg.phonon_reference_e10_mev);
    const auto res = relaxation_rate(e10, cfg.phonon_env, cfg.phonon_shape);

    std::cout << "E10 = " << format_g6(e10) << " meV\n";
    std::cout << "K10 = " << format_g6(res.params.k10_per_nm) << " 1/nm, alpha = "
              << format_g6(res.params.alpha) << ", beta = " << format_g6(res.params.beta) << "\n";
    std::cout << "prefactor = " << format_g6(res.prefactor_per_s)
              << " 1/s, integral = " << format_g6(res.integral) << "\n";
    std::cout << "rate = " << format_g6(res.rate_per_s) << " 1/s, tau = "
              << format_g6(res.tau_s * 1e6) << " us\n";

    json rep = base_report(cfg);
    rep["e10_mev"] = e10;
    rep["k10_per_nm"] = res.params.k10_per_nm;
    rep["alpha"] = res.params.alpha;
    rep["beta"] = res.params.beta;
    rep["prefactor_per_s"] = res.prefactor_per_s;
    rep["integral"] = res.integral;
    rep["tau_s"] = res.tau_s;
    write_report(cfg, "phonon_report.json", rep);

    if (sweep_spec) {
        const auto& s = *sweep_spec;
        ensure_directory(cfg.output_dir);
        CsvWriter csv(cfg.output_dir + "/phonon_sweep.csv",
                      {"E10_meV", "K10_per_nm", "alpha", "beta", "tau_s"});
        const int n = static_cast<int>(s[2]);
        for (int i = 0; i < n; ++i) {
            const double e = s[0] + (s[1] - s[0]) * i / std::max(1, n - 1);
            const auto r = relaxation_rate(e, cfg.phonon_env, cfg.phonon_shape);
            csv.row({e, r.params.k10_per_nm, r.params.alpha, r.params.beta, r.tau_s});
        }
        csv.close();
        std::cout << "sweep -> " << cfg.output_dir << "/phonon_sweep.csv\n";
    }
    return 0;
}

int cmd_cnot(const RunConfig& cfg, const std::string& mode, bool effective, bool no_calibrate,
             std::optional<double> delta_t, std::optional<int> fock_cutoff,
             std::optional<double> laser_scale, bool write_trajectory) {
    if (mode != "kernel" && mode != "full")
        throw ConfigError("cnot: mode must be 'kernel' or 'full'");
    const ModelKind model = effective ? ModelKind::effective : ModelKind::full;
    if (effective && mode == "full")
        throw ConfigError(
            "cnot: the reduced model covers the controlled-phase kernel only (one-bit "
            "rotations are eliminated from it); use --mode kernel");

    RunConfig run = cfg;
    if (fock_cutoff) run.cavity.fock_cutoff = *fock_cutoff;
    const auto grid = run.axial_grid();
    const auto map = run_sweep(run);
    const auto ctx = GateContext::build(run.geometry, grid, map, run.cavity, run.laser);

    CnotOptions opt;
    opt.kernel_only = (mode == "kernel");
    opt.rise_ns = delta_t.value_or(run.pulse.rise_ns);
    opt.onebit_laser_scale = laser_scale.value_or(run.pulse.onebit_laser_scale);
    opt.min_delay_ns = run.pulse.min_delay_ns;
    opt.delay_budget_ns = run.pulse.delay_budget_ns;

    PlanInfo info;
    PulseSequence seq = plan_cnot(ctx, opt, &info);
    std::optional<CalibrationResult> cal;
    if (model == ModelKind::full && !no_calibrate) {
        cal = calibrate_two_photon(ctx, opt, run.pulse.dt_max_ns);
        apply_calibration(seq, ctx, opt, *cal, &info);
    }

    SimulateOptions sopt;
    sopt.dt_max_ns = run.pulse.dt_max_ns;
    GateReport rep = simulate_gate(ctx, seq, model, opt, sopt);
    rep.calibration = cal;
    rep.plan = info;

    std::cout << "model: " << (effective ? "effective" : "full") << ", mode: " << mode << "\n";
    std::cout << "segments (pulse ns / delay ns):\n";
    for (std::size_t i = 0; i < seq.segments.size(); ++i)
        std::cout << "  " << seq.segments[i].label << ": "
                  << format_g6(seq.segments[i].pulse_ns()) << " / "
                  << format_g6(seq.segments[i].post_delay_ns) << "\n";
    std::cout << "total " << format_g6(rep.total_ns) << " ns\n";
    if (cal)
        std::cout << "two-photon calibration: field " << format_g6(cal->field_mvpm)
                  << " MV/m, duration " << format_g6(cal->duration_ns)
                  << " ns, absorbed Stark shift " << format_g6(cal->stark_shift_mev) << " meV ("
                  << cal->probes << " probes)\n";
    std::cout << "truth-table diagonal phases (rad):";
    for (int k = 0; k < 4; ++k) std::cout << " " << format_g6(std::arg(rep.truth[k][k]));
    std::cout << "\nfidelity raw = " << format_g6(rep.fidelity_raw)
              << ", phase-optimized = " << format_g6(rep.fidelity_phase_opt) << "\n";
    std::cout << "leakage avg = " << format_g6(rep.leakage_avg)
              << ", max = " << format_g6(rep.leakage_max)
              << ", norm drift = " << format_g6(rep.norm_drift_max) << "\n";
    for (const auto& w : info.warnings) std::cout << "warning: " << w << "\n";

    json j = base_report(run);
    j["mode"] = mode;
    j["model"] = effective ? "effective" : "full";
    json truth = json::array();
    for (int out = 0; out < 4; ++out) {
        json row = json::array();
        for (int in = 0; in < 4; ++in)
            row.push_back({rep.truth[out][in].real(), rep.truth[out][in].imag()});
        truth.push_back(row);
    }
    j["truth_re_im"] = truth;
    j["fidelity_raw"] = rep.fidelity_raw;
    j["fidelity_phase_opt"] = rep.fidelity_phase_opt;
    j["leakage_avg"] = rep.leakage_avg;
    j["leakage_max"] = rep.leakage_max;
    j["norm_drift_max"] = rep.norm_drift_max;
    json segs = json::array();
    for (const auto& s : seq.segments)
        segs.push_back({{"label", s.label},
                        {"dot", s.dot_id},
                        {"field_mvpm", s.target_field_mvpm},
                        {"pulse_ns", s.pulse_ns()},
                        {"post_delay_ns", s.post_delay_ns},
                        {"laser_on", s.laser_on}});
    j["segments"] = segs;
    j["total_ns"] = rep.total_ns;
    if (cal)
        j["calibration"] = {{"field_mvpm", cal->field_mvpm},
                            {"duration_ns", cal->duration_ns},
                            {"otilde_eff_radns", cal->otilde_eff_radns},
                            {"stark_shift_mev", cal->stark_shift_mev},
                            {"probes", cal->probes}};
    j["warnings"] = info.warnings;
    write_report(cfg, "gate_report.json", j);

    if (write_trajectory) {
        SystemLayout layout;
        layout.n_dots = 2;
        layout.n_photon = run.cavity.fock_cutoff + 1;
        std::vector<int> levels(2, 0);
        levels[opt.control_dot] = 1;
        levels[opt.target_dot] = 1;
        CompositeState init = CompositeState::basis(layout, levels, 0);
        EvolveOptions eopt;
        eopt.dt_max_ns = run.pulse.dt_max_ns;
        eopt.sample_every_ns = seq.total_ns() / 2000.0;
        const auto traj = evolve(init, seq, ctx.tables, ctx.frame(), model, eopt);
        std::vector<std::string> cols{"t_ns"};
        for (int i = 0; i < layout.dim(); ++i) {
            std::ostringstream os;
            os << "p_a" << layout.level_of(i, 0) << "b" << layout.level_of(i, 1) << "n"
               << layout.photon_of(i);
            cols.push_back(os.str());
        }
        cols.push_back("photon_prob");
        CsvWriter csv(cfg.output_dir + "/trajectory.csv", cols);
        for (const auto& s : traj.trajectory) {
            std::vector<double> row{s.t_ns};
            row.insert(row.end(), s.populations.begin(), s.populations.end());
            row.push_back(s.photon_prob);
            csv.row(row);
        }
        csv.close();
        std::cout << "trajectory (|1,1> column) -> " << cfg.output_dir << "/trajectory.csv\n";
    }
    return 0;
}

int cmd_budgets(const RunConfig& cfg, double temperature, std::optional<double> e10_override) {
    const auto grid = cfg.axial_grid();
    double e10, g01;
    if (e10_override) {
        e10 = *e10_override;
        const auto map = run_sweep(cfg);
        const auto ctx = GateContext::build(cfg.geometry, grid, map, cfg.cavity, cfg.laser);
        g01 = ctx.couplings.at_ec.g01;
    } else {
        const auto map = run_sweep(cfg);
        const auto ctx = GateContext::build(cfg.geometry, grid, map, cfg.cavity, cfg.laser);
        e10 = ctx.tables.e10(0.0);
        g01 = ctx.couplings.at_ec.g01;
    }
    const auto b = budgets(e10, g01, temperature);

    std::cout << "E10 = " << format_g6(b.e10_mev) << " meV, T = " << format_g6(b.temperature_K)
              << " K\n";
    std::cout << "thermal occupation exp(-E10/kBT) = " << format_g6(b.thermal_occupation) << "\n";
    std::cout << "initialization threshold E10/kB = " << format_g6(b.threshold_temperature_K)
              << " K (operate far below)\n";
    std::cout << "readout rate ~ g01 = " << format_g6(b.readout_rate_hz)
              << " Hz, required bandwidth > " << format_g6(b.bandwidth_min_hz) << " Hz\n";
    std::cout << "detector figure E10*sqrt(g01) = " << format_g6(b.nep_power_w_per_sqrt_hz)
              << " W/Hz^1/2 (literal E10/sqrt(g01) = " << format_g6(b.nep_literal_w_per_sqrt_hz)
              << ")\n";

    json rep = base_report(cfg);
    rep["e10_mev"] = b.e10_mev;
    rep["temperature_K"] = b.temperature_K;
    rep["thermal_occupation"] = b.thermal_occupation;
    rep["threshold_temperature_K"] = b.threshold_temperature_K;
    rep["readout_rate_hz"] = b.readout_rate_hz;
    rep["bandwidth_min_hz"] = b.bandwidth_min_hz;
    rep["nep_power_w_per_sqrt_hz"] = b.nep_power_w_per_sqrt_hz;
    rep["nep_literal_w_per_sqrt_hz"] = b.nep_literal_w_per_sqrt_hz;
    write_report(cfg, "budgets_report.json", rep);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-dot / terahertz-cavity device simulator"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON config file (defaults: reference device)");

    auto* sm = app.add_subcommand("stark-map", "Sweep the field and tabulate E10/E20/dipoles");
    std::optional<double> dump_at;
    sm->add_option("--dump-spectrum-at", dump_at,
                   "also dump potential + lowest wavefunctions at this field (MV/m)");

    auto* op = app.add_subcommand("operating-points", "Locate e_c, e_l, e_lc and couplings");

    auto* ph = app.add_subcommand("phonon", "LA-phonon relaxation rate");
    std::optional<double> e10_ph;
    ph->add_option("--e10", e10_ph, "override E10 (meV)");
    std::vector<double> ph_sweep;
    ph->add_option("--sweep", ph_sweep, "tau(E10) sweep: lo_mev hi_mev n_points")->expected(3);

    auto* cn = app.add_subcommand("cnot", "Plan and simulate the two-qubit gate");
    std::string mode = "kernel";
    cn->add_option("--mode", mode, "kernel | full")->default_val("kernel");
    bool effective = false;
    cn->add_flag("--effective-model", effective, "use the reduced two-photon generator");
    bool no_calibrate = false;
    cn->add_flag("--no-calibrate", no_calibrate, "skip the dressed-resonance calibration");
    std::optional<double> delta_t;
    cn->add_option("--delta-t", delta_t, "pulse rise time (ns)");
    std::optional<int> fock;
    cn->add_option("--fock-cutoff", fock, "max photon number retained");
    std::optional<double> lscale;
    cn->add_option("--laser-scale", lscale, "attenuation of the one-bit rotation pulses");
    bool traj = false;
    cn->add_flag("--trajectory", traj, "write the |1,1> column trajectory CSV");

    auto* bu = app.add_subcommand("budgets", "Initialization and readout budgets");
    double temperature = 1.0;
    bu->add_option("--temperature", temperature, "operating temperature (K)")->default_val(1.0);
    std::optional<double> e10_bu;
    bu->add_option("--e10", e10_bu, "override E10 (meV)");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
        cfg.validate();
        if (sm->parsed()) return cmd_stark_map(cfg, dump_at);
        if (op->parsed()) return cmd_operating_points(cfg);
        if (ph->parsed())
            return cmd_phonon(cfg, e10_ph,
                              ph_sweep.empty() ? std::nullopt
                                               : std::optional<std::vector<double>>(ph_sweep));
        if (cn->parsed())
            return cmd_cnot(cfg, mode, effective, no_calibrate, delta_t, fock, lscale, traj);
        if (bu->parsed()) return cmd_budgets(cfg, temperature, e10_bu);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
