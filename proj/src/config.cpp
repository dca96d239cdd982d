#include "qdot/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qdot/errors.hpp"

namespace qdot {

using nlohmann::json;

namespace {

void require_known_keys(const json& j, const std::set<std::string>& known,
                        const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
}

double positive(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const double v = j.at(key).get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("config: " + where + "." + key + " must be positive and finite");
    return v;
}

double nonneg(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const double v = j.at(key).get<double>();
    if (v < 0.0 || !std::isfinite(v))
        throw ConfigError("config: " + where + "." + key + " must be >= 0 and finite");
    return v;
}

}  // namespace

AxialGrid RunConfig::axial_grid() const {
    return AxialGrid::for_geometry(geometry, grid.outer_padding_nm, grid.outer_barrier_mev,
                                   grid.n_points);
}

void RunConfig::validate() const {
    geometry.validate();
    cavity.validate();
    laser.validate();
    phonon_env.validate();
    phonon_shape.validate();
    if (grid.n_points < 16) throw ConfigError("config: grid.n_points too small");
    if (!(grid.outer_padding_nm > 0.0)) throw ConfigError("config: grid.outer_padding_nm must be positive");
    if (!(phonon_reference_e10_mev > 0.0))
        throw ConfigError("config: phonon.reference_e10_mev must be positive");
    if (!(sweep.field_lo_mvpm < sweep.field_hi_mvpm))
        throw ConfigError("config: sweep range is empty (field_lo must be below field_hi)");
    if (sweep.n_steps < 50) throw ConfigError("config: sweep.n_steps must be >= 50");
    if (!(pulse.rise_ns >= 0.0) || !(pulse.dt_max_ns > 0.0))
        throw ConfigError("config: pulse timings must be positive");
    if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
}

json RunConfig::to_json() const {
    json j;
    json layers = json::array();
    for (const auto& l : geometry.layers) layers.push_back({l.thickness_nm, l.potential_mev});
    j["geometry"] = {{"layers", layers},
                     {"radius_a_nm", geometry.radius_a_nm},
                     {"effective_mass_ratio", geometry.effective_mass_ratio}};
    j["grid"] = {{"outer_barrier_mev", grid.outer_barrier_mev},
                 {"outer_padding_nm", grid.outer_padding_nm},
                 {"n_points", grid.n_points}};
    j["cavity"] = {{"photon_energy_mev", cavity.photon_energy_mev},
                   {"refractive_index", cavity.refractive_index},
                   {"volume_um3", cavity.volume_um3},
                   {"fock_cutoff", cavity.fock_cutoff}};
    j["laser"] = {{"photon_energy_mev", laser.photon_energy_mev},
                  {"field_amplitude_kvpm", laser.field_amplitude_kvpm}};
    j["phonon"] = {{"mass_density_kgm3", phonon_env.mass_density_kgm3},
                   {"sound_speed_mps", phonon_env.sound_speed_mps},
                   {"deformation_potential_ev", phonon_env.deformation_potential_ev},
                   {"radius_a_nm", phonon_shape.radius_a_nm},
                   {"height_h_nm", phonon_shape.height_h_nm},
                   {"reference_e10_mev", phonon_reference_e10_mev}};
    j["sweep"] = {{"field_lo_mvpm", sweep.field_lo_mvpm},
                  {"field_hi_mvpm", sweep.field_hi_mvpm},
                  {"n_steps", sweep.n_steps}};
    j["pulse"] = {{"rise_ns", pulse.rise_ns},
                  {"dt_max_ns", pulse.dt_max_ns},
                  {"min_delay_ns", pulse.min_delay_ns},
                  {"delay_budget_ns", pulse.delay_budget_ns},
                  {"onebit_laser_scale", pulse.onebit_laser_scale}};
    j["output_dir"] = output_dir;
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    require_known_keys(
        j, {"geometry", "grid", "cavity", "laser", "phonon", "sweep", "pulse", "output_dir"},
        "top level");

    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        require_known_keys(g, {"layers", "radius_a_nm", "effective_mass_ratio"}, "geometry");
        if (g.contains("layers")) {
            cfg.geometry.layers.clear();
            for (const auto& l : g.at("layers")) {
                if (!l.is_array() || l.size() != 2)
                    throw ConfigError("config: geometry.layers entries must be [thickness_nm, potential_mev]");
                cfg.geometry.layers.push_back({l[0].get<double>(), l[1].get<double>()});
            }
        }
        cfg.geometry.radius_a_nm = positive(g, "radius_a_nm", cfg.geometry.radius_a_nm, "geometry");
        cfg.geometry.effective_mass_ratio =
            positive(g, "effective_mass_ratio", cfg.geometry.effective_mass_ratio, "geometry");
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        require_known_keys(g, {"outer_barrier_mev", "outer_padding_nm", "n_points"}, "grid");
        cfg.grid.outer_barrier_mev = nonneg(g, "outer_barrier_mev", cfg.grid.outer_barrier_mev, "grid");
        cfg.grid.outer_padding_nm = positive(g, "outer_padding_nm", cfg.grid.outer_padding_nm, "grid");
        if (g.contains("n_points")) cfg.grid.n_points = g.at("n_points").get<int>();
    }
    if (j.contains("cavity")) {
        const auto& c = j.at("cavity");
        require_known_keys(c, {"photon_energy_mev", "refractive_index", "volume_um3", "fock_cutoff"},
                           "cavity");
        cfg.cavity.photon_energy_mev =
            positive(c, "photon_energy_mev", cfg.cavity.photon_energy_mev, "cavity");
        cfg.cavity.refractive_index =
            positive(c, "refractive_index", cfg.cavity.refractive_index, "cavity");
        cfg.cavity.volume_um3 = nonneg(c, "volume_um3", cfg.cavity.volume_um3, "cavity");
        if (c.contains("fock_cutoff")) cfg.cavity.fock_cutoff = c.at("fock_cutoff").get<int>();
    }
    if (j.contains("laser")) {
        const auto& l = j.at("laser");
        require_known_keys(l, {"photon_energy_mev", "field_amplitude_kvpm"}, "laser");
        cfg.laser.photon_energy_mev =
            positive(l, "photon_energy_mev", cfg.laser.photon_energy_mev, "laser");
        cfg.laser.field_amplitude_kvpm =
            nonneg(l, "field_amplitude_kvpm", cfg.laser.field_amplitude_kvpm, "laser");
    }
    if (j.contains("phonon")) {
        const auto& p = j.at("phonon");
        require_known_keys(p,
                           {"mass_density_kgm3", "sound_speed_mps", "deformation_potential_ev",
                            "radius_a_nm", "height_h_nm", "reference_e10_mev"},
                           "phonon");
        cfg.phonon_env.mass_density_kgm3 =
            positive(p, "mass_density_kgm3", cfg.phonon_env.mass_density_kgm3, "phonon");
        cfg.phonon_env.sound_speed_mps =
            positive(p, "sound_speed_mps", cfg.phonon_env.sound_speed_mps, "phonon");
        cfg.phonon_env.deformation_potential_ev =
            positive(p, "deformation_potential_ev", cfg.phonon_env.deformation_potential_ev, "phonon");
        cfg.phonon_shape.radius_a_nm =
            positive(p, "radius_a_nm", cfg.phonon_shape.radius_a_nm, "phonon");
        cfg.phonon_shape.height_h_nm =
            positive(p, "height_h_nm", cfg.phonon_shape.height_h_nm, "phonon");
        cfg.phonon_reference_e10_mev =
            positive(p, "reference_e10_mev", cfg.phonon_reference_e10_mev, "phonon");
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        require_known_keys(s, {"field_lo_mvpm", "field_hi_mvpm", "n_steps"}, "sweep");
        if (s.contains("field_lo_mvpm")) cfg.sweep.field_lo_mvpm = s.at("field_lo_mvpm").get<double>();
        if (s.contains("field_hi_mvpm")) cfg.sweep.field_hi_mvpm = s.at("field_hi_mvpm").get<double>();
        if (s.contains("n_steps")) cfg.sweep.n_steps = s.at("n_steps").get<int>();
    }
    if (j.contains("pulse")) {
        const auto& p = j.at("pulse");
        require_known_keys(
            p, {"rise_ns", "dt_max_ns", "min_delay_ns", "delay_budget_ns", "onebit_laser_scale"},
            "pulse");
        cfg.pulse.rise_ns = nonneg(p, "rise_ns", cfg.pulse.rise_ns, "pulse");
        cfg.pulse.dt_max_ns = positive(p, "dt_max_ns", cfg.pulse.dt_max_ns, "pulse");
        cfg.pulse.min_delay_ns = nonneg(p, "min_delay_ns", cfg.pulse.min_delay_ns, "pulse");
        cfg.pulse.delay_budget_ns = positive(p, "delay_budget_ns", cfg.pulse.delay_budget_ns, "pulse");
        cfg.pulse.onebit_laser_scale =
            positive(p, "onebit_laser_scale", cfg.pulse.onebit_laser_scale, "pulse");
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();

    cfg.validate();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

std::string config_hash(const RunConfig& cfg) {
    const std::string dump = cfg.to_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace qdot
