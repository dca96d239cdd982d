#pragma once

#include <string>

#include <json.hpp>

#include "qdot/cavity.hpp"
#include "qdot/geometry.hpp"
#include "qdot/phonon.hpp"

namespace qdot {

struct SweepConfig {
    double field_lo_mvpm = 0.0;
    double field_hi_mvpm = 2.5;
    int n_steps = 251;
};

struct PulseConfig {
    double rise_ns = 0.01;
    double dt_max_ns = 1e-3;
    double min_delay_ns = 1e-3;
    double delay_budget_ns = 2.0;
    double onebit_laser_scale = 1.0;
};

struct GridConfig {
    double outer_barrier_mev = 300.0;
    double outer_padding_nm = 20.0;
    int n_points = 4096;
};

// Everything a run needs; all defaults are the reference device parameters,
// so every subcommand without a config file reproduces the headline numbers.
struct RunConfig {
    QDGeometry geometry = QDGeometry::reference();
    GridConfig grid;
    CavityMode cavity;
    LaserDrive laser;
    PhononEnvironment phonon_env;
    ApproxDotShape phonon_shape;
    double phonon_reference_e10_mev = 12.25;
    SweepConfig sweep;
    PulseConfig pulse;
    std::string output_dir = "out";

    AxialGrid axial_grid() const;
    void validate() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);  // unknown keys rejected
    static RunConfig load(const std::string& path);
};

// FNV-1a hash of the canonical (sorted-key) serialized config.
std::string config_hash(const RunConfig& cfg);

}  // namespace qdot
