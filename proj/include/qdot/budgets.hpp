#pragma once

namespace qdot {

// Initialization and readout figures of merit for a given qubit splitting.
struct BudgetReport {
    double e10_mev = 0.0;
    double g01_radns = 0.0;
    double temperature_K = 0.0;

    double thermal_occupation = 0.0;    // exp(-E10 / kB T)
    double threshold_temperature_K = 0.0;  // E10 / kB
    double readout_rate_hz = 0.0;       // ~ g01
    double bandwidth_min_hz = 0.0;      // > g01
    // The printed detector figure of merit is dimensionally ambiguous; both
    // readings are reported, labeled.
    double nep_power_w_per_sqrt_hz = 0.0;   // E10 * sqrt(g01)
    double nep_literal_w_per_sqrt_hz = 0.0; // E10 / sqrt(g01)
};

BudgetReport budgets(double e10_mev, double g01_radns, double temperature_K);

}  // namespace qdot
