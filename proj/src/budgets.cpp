#include "qdot/budgets.hpp"

#include <cmath>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

BudgetReport budgets(double e10_mev, double g01_radns, double temperature_K) {
    if (!(e10_mev > 0.0) || !(g01_radns > 0.0) || temperature_K < 0.0)
        throw ConfigError("budgets: E10 and g01 must be positive, temperature >= 0");

    BudgetReport r;
    r.e10_mev = e10_mev;
    r.g01_radns = g01_radns;
    r.temperature_K = temperature_K;

    r.threshold_temperature_K = e10_mev / constants::kB_mev_per_K;
    r.thermal_occupation =
        temperature_K > 0.0 ? std::exp(-e10_mev / (constants::kB_mev_per_K * temperature_K)) : 0.0;

    const double g01_hz = g01_radns * 1e9;  // treated as a rate, per the readout scheme
    r.readout_rate_hz = g01_hz;
    r.bandwidth_min_hz = g01_hz;

    const double e10_J = e10_mev * constants::mev_J;
    r.nep_power_w_per_sqrt_hz = e10_J * std::sqrt(g01_hz);
    r.nep_literal_w_per_sqrt_hz = e10_J / std::sqrt(g01_hz);
    return r;
}

}  // namespace qdot
