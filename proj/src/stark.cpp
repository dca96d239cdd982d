#include "qdot/stark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <future>
#include <sstream>
#include <thread>

#include "qdot/errors.hpp"

namespace qdot {

namespace {

std::string provenance_string(const QDGeometry& g, const AxialGrid& grid, double lo, double hi,
                              int n) {
    // FNV-1a over the geometry numbers keeps reruns identifiable.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (const auto& l : g.layers) {
        mix(l.thickness_nm);
        mix(l.potential_mev);
    }
    mix(g.radius_a_nm);
    mix(g.effective_mass_ratio);
    mix(grid.z_min_nm);
    mix(grid.z_max_nm);
    mix(static_cast<double>(grid.n_points));
    mix(grid.boundary_potential_mev);
    std::ostringstream os;
    os << "geometry:" << std::hex << h << std::dec << " grid:" << grid.n_points << "pts"
       << " sweep:" << lo << ".." << hi << "x" << n;
    return os.str();
}

}  // namespace

StarkMap stark_map(const QDGeometry& geometry, const AxialGrid& grid, double field_lo,
                   double field_hi, int n_steps, const SweepOptions& options) {
    if (!(field_lo < field_hi)) throw ConfigError("stark_map: field_lo must be below field_hi");
    if (n_steps < 50) throw ConfigError("stark_map: need n_steps >= 50");
    const int k = options.tracked_levels;

    std::vector<double> fields(n_steps);
    for (int i = 0; i < n_steps; ++i)
        fields[i] = field_lo + (field_hi - field_lo) * i / (n_steps - 1);

    // Field points are independent solves; the tracking merge is sequential.
    std::vector<AxialSpectrum> spectra(n_steps);
    if (options.parallel) {
        const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::future<void>> futs;
        std::atomic<int> next{0};
        for (unsigned w = 0; w < workers; ++w) {
            futs.push_back(std::async(std::launch::async, [&]() {
                for (int i = next.fetch_add(1); i < n_steps; i = next.fetch_add(1))
                    spectra[i] = solve_axial_at(geometry, grid, fields[i], k);
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (int i = 0; i < n_steps; ++i)
            spectra[i] = solve_axial_at(geometry, grid, fields[i], k);
    }

    StarkMap map;
    map.provenance = provenance_string(geometry, grid, field_lo, field_hi, n_steps);
    map.rows.reserve(n_steps);

    // Sequential merge: track branches by overlap with the previous point.
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    const AxialSpectrum* prev = nullptr;
    bool in_ambiguous = false;
    double ambiguous_start = 0.0;

    for (int s = 0; s < n_steps; ++s) {
        AxialSpectrum& cur = spectra[s];
        if (prev) {
            std::vector<int> assign(k, -1);
            std::vector<bool> used(k, false);
            bool ambiguous = false;
            for (int b = 0; b < k; ++b) {
                double best = -1.0, second = -1.0;
                int best_j = -1;
                for (int j = 0; j < k; ++j) {
                    if (used[j]) continue;
                    const double ov = std::abs(wavefunction_overlap(*prev, b, cur, j));
                    if (ov > best) {
                        second = best;
                        best = ov;
                        best_j = j;
                    } else if (ov > second) {
                        second = ov;
                    }
                }
                assign[b] = best_j;
                used[best_j] = true;
                if (second > 0.0 && best > 0.0 && (best - second) < 0.05 * best) ambiguous = true;
            }
            // Reorder current spectrum into branch order.
            AxialSpectrum tracked = cur;
            for (int b = 0; b < k; ++b) {
                tracked.energies_mev[b] = cur.energies_mev[assign[b]];
                tracked.wavefunctions[b] = cur.wavefunctions[assign[b]];
                if (wavefunction_overlap(*prev, b, tracked, b) < 0.0)
                    for (auto& v : tracked.wavefunctions[b]) v = -v;
            }
            cur = std::move(tracked);

            if (ambiguous && !in_ambiguous) {
                in_ambiguous = true;
                ambiguous_start = fields[s - 1];
            } else if (!ambiguous && in_ambiguous) {
                in_ambiguous = false;
                map.ambiguous_intervals.emplace_back(ambiguous_start, fields[s]);
            }
        }
        prev = &cur;

        StarkMapRow row;
        row.field_mvpm = fields[s];
        row.e10_mev = cur.transition_mev(0, 1);
        row.e20_mev = cur.transition_mev(0, 2);
        row.z01_nm = dipole_z(cur, 0, 1);
        row.z12_nm = dipole_z(cur, 1, 2);
        row.z02_nm = dipole_z(cur, 0, 2);
        map.rows.push_back(row);
    }
    if (in_ambiguous) map.ambiguous_intervals.emplace_back(ambiguous_start, fields.back());
    return map;
}

namespace {

double transition_value(const StarkMapRow& r, Transition t) {
    return t == Transition::e10 ? r.e10_mev : r.e20_mev;
}

double fresh_transition(const QDGeometry& g, const AxialGrid& grid, double field, Transition t) {
    const auto spec = solve_axial_at(g, grid, field, 3);
    return t == Transition::e10 ? spec.transition_mev(0, 1) : spec.transition_mev(0, 2);
}

}  // namespace

std::vector<double> find_resonance_field(const StarkMap& map, const QDGeometry& geometry,
                                         const AxialGrid& grid, Transition transition,
                                         double target_mev) {
    if (map.rows.size() < 2) throw ConfigError("find_resonance_field: map too small");

    std::vector<double> roots;
    double vmin = transition_value(map.rows.front(), transition);
    double vmax = vmin;
    for (std::size_t i = 0; i + 1 < map.rows.size(); ++i) {
        const double va = transition_value(map.rows[i], transition);
        const double vb = transition_value(map.rows[i + 1], transition);
        vmin = std::min({vmin, va, vb});
        vmax = std::max({vmax, va, vb});
        if ((va - target_mev) * (vb - target_mev) > 0.0) continue;
        if (va == vb) continue;

        double lo = map.rows[i].field_mvpm;
        double hi = map.rows[i + 1].field_mvpm;
        double flo = va - target_mev;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = fresh_transition(geometry, grid, mid, transition) - target_mev;
            if (flo * fm <= 0.0)
                hi = mid;
            else {
                lo = mid;
                flo = fm;
            }
            if (std::abs(fm) < 1e-5 && hi - lo < 1e-9) break;
        }
        double root = 0.5 * (lo + hi);
        if (std::abs(fresh_transition(geometry, grid, root, transition) - target_mev) > 1e-4)
            throw NumericError("find_resonance_field: refinement stalled above 1e-4 meV");
        // De-duplicate roots that coincide at a shared map node.
        if (roots.empty() || std::abs(roots.back() - root) > 1e-9) roots.push_back(root);
    }
    if (roots.empty()) {
        std::ostringstream os;
        os << "resonance unreachable: target " << target_mev << " meV outside the achievable ["
           << vmin << ", " << vmax << "] meV range of this sweep";
        throw NumericError(os.str());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

OperatingPointInfo point_info(const QDGeometry& g, const AxialGrid& grid, double field) {
    const auto spec = solve_axial_at(g, grid, field, 3);
    OperatingPointInfo p;
    p.field_mvpm = field;
    p.e10_mev = spec.transition_mev(0, 1);
    p.e20_mev = spec.transition_mev(0, 2);
    p.z01_nm = std::abs(dipole_z(spec, 0, 1));
    p.z12_nm = std::abs(dipole_z(spec, 1, 2));
    p.z02_nm = std::abs(dipole_z(spec, 0, 2));
    return p;
}

// Among candidate fields pick the one keeping E20 farthest from the
// two-photon sum, so the auxiliary level stays inert during the pulse.
std::size_t select_by_auxiliary_margin(const std::vector<OperatingPointInfo>& infos,
                                       double sum_mev) {
    std::size_t best = 0;
    double best_margin = -1.0;
    for (std::size_t i = 0; i < infos.size(); ++i) {
        const double margin = std::abs(infos[i].e20_mev - sum_mev);
        if (margin > best_margin) {
            best_margin = margin;
            best = i;
        }
    }
    return best;
}

}  // namespace

OperatingPoints operating_points(const QDGeometry& geometry, const AxialGrid& grid,
                                 const StarkMap& map, double cavity_mev, double laser_mev) {
    if (!(cavity_mev > 0.0) || !(laser_mev > 0.0))
        throw ConfigError("operating_points: photon energies must be positive");

    OperatingPoints op;
    op.cavity_mev = cavity_mev;
    op.laser_mev = laser_mev;
    const double sum = cavity_mev + laser_mev;

    op.ec_candidates = find_resonance_field(map, geometry, grid, Transition::e10, cavity_mev);
    op.el_candidates = (laser_mev == cavity_mev)
                           ? op.ec_candidates
                           : find_resonance_field(map, geometry, grid, Transition::e10, laser_mev);
    op.elc_candidates = find_resonance_field(map, geometry, grid, Transition::e20, sum);

    auto pick = [&](const std::vector<double>& cand) {
        std::vector<OperatingPointInfo> infos;
        infos.reserve(cand.size());
        for (double f : cand) infos.push_back(point_info(geometry, grid, f));
        return infos[select_by_auxiliary_margin(infos, sum)];
    };
    op.at_ec = pick(op.ec_candidates);
    op.at_el = (laser_mev == cavity_mev) ? op.at_ec : pick(op.el_candidates);

    // For the two-photon point itself the auxiliary margin is ~0 by
    // construction; prefer the lowest-field crossing.
    op.at_elc = point_info(geometry, grid, op.elc_candidates.front());

    const double w21 = op.at_elc.e20_mev - op.at_elc.e10_mev;
    op.detuning_21_laser_mev = w21 - laser_mev;
    op.detuning_21_cavity_mev = w21 - cavity_mev;
    if (std::abs(op.detuning_21_laser_mev) >= std::abs(op.detuning_21_cavity_mev))
        throw NumericError(
            "operating_points: detuning hierarchy |w21-wl| < |w21-wc| violated; the "
            "two-photon protocol premise does not hold for these photon energies");
    return op;
}

}  // namespace qdot
