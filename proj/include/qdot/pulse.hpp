#pragma once

#include <string>
#include <vector>

namespace qdot {

// One trapezoidal voltage pulse applied to one dot: linear rise to the
// target field, plateau, linear fall back to e = 0, then an idle delay.
// rise_ns = 0 degenerates to a square pulse.  The laser flag gates the
// classical drive for the whole pulse (its envelope follows the ramps).
struct PulseSegment {
    int dot_id = 0;
    double target_field_mvpm = 0.0;
    double plateau_ns = 0.0;
    double rise_ns = 0.01;
    bool laser_on = false;
    double laser_scale = 1.0;
    double post_delay_ns = 0.0;
    std::string label;

    double pulse_ns() const { return 2.0 * rise_ns + plateau_ns; }
    double duration_ns() const { return pulse_ns() + post_delay_ns; }

    // Field and laser envelope fraction at local time t in [0, duration).
    double field_at(double t_ns) const;
    double envelope_at(double t_ns) const;
};

struct PulseSequence {
    std::vector<PulseSegment> segments;

    double total_ns() const {
        double t = 0.0;
        for (const auto& s : segments) t += s.duration_ns();
        return t;
    }
    void validate() const;  // throws ConfigError on malformed segments
};

}  // namespace qdot
