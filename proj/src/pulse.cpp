#include "qdot/pulse.hpp"

#include <cmath>

#include "qdot/errors.hpp"

namespace qdot {

double PulseSegment::field_at(double t_ns) const {
    return target_field_mvpm * envelope_at(t_ns);
}

double PulseSegment::envelope_at(double t_ns) const {
    if (t_ns < 0.0 || t_ns >= pulse_ns()) return 0.0;
    if (rise_ns > 0.0) {
        if (t_ns < rise_ns) return t_ns / rise_ns;
        const double fall = pulse_ns() - t_ns;
        if (fall < rise_ns) return fall / rise_ns;
    }
    return 1.0;
}

void PulseSequence::validate() const {
    for (const auto& s : segments) {
        if (s.rise_ns < 0.0) throw ConfigError("pulse: rise time must be >= 0");
        if (s.plateau_ns < 0.0) throw ConfigError("pulse: plateau duration must be >= 0");
        if (s.post_delay_ns < 0.0) throw ConfigError("pulse: post delay must be >= 0");
        if (s.laser_scale < 0.0) throw ConfigError("pulse: laser scale must be >= 0");
        if (s.dot_id < 0) throw ConfigError("pulse: dot id must be >= 0");
    }
}

}  // namespace qdot
