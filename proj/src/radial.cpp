#include "qdot/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

double bessel_j_zero(int m, int l) {
    if (m < 0 || l < 1) throw ConfigError("bessel_j_zero: need m >= 0, l >= 1");
    // McMahon's asymptotic expansion gives a bracketing guess; zeros of J_m
    // are separated by roughly pi, so +-1 around the guess is a safe bracket.
    const double b = (l + 0.5 * m - 0.25) * std::numbers::pi;
    const double mu = 4.0 * m * m;
    double guess = b - (mu - 1.0) / (8.0 * b);
    double lo = std::max(guess - 1.2, 1e-6);
    double hi = guess + 1.2;
    auto f = [m](double x) { return std::cyl_bessel_j(static_cast<double>(m), x); };
    double flo = f(lo);
    double fhi = f(hi);
    int expand = 0;
    while (flo * fhi > 0.0 && expand++ < 20) {
        lo = std::max(lo - 0.5, 1e-6);
        hi += 0.5;
        flo = f(lo);
        fhi = f(hi);
    }
    if (flo * fhi > 0.0) throw NumericError("bessel_j_zero: failed to bracket zero");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-13 * hi) break;
    }
    return 0.5 * (lo + hi);
}

RadialSpectrum radial_spectrum(const QDGeometry& geometry, int n_levels, double ceiling_mev) {
    geometry.validate();
    if (n_levels < 2) throw ConfigError("radial_spectrum: need n_levels >= 2");

    const double a = geometry.radius_a_nm;
    const double unit = constants::hbar2_over_2me / geometry.effective_mass_ratio / (a * a);

    // Enumerate enough (m, l) candidates to cover the requested count.
    std::vector<RadialLevel> all;
    const int span = n_levels + 2;
    for (int m = 0; m <= span; ++m) {
        for (int l = 1; l <= span; ++l) {
            const double x = bessel_j_zero(m, l);
            all.push_back({unit * x * x, m, l});
        }
    }
    std::sort(all.begin(), all.end(),
              [](const RadialLevel& p, const RadialLevel& q) { return p.energy_mev < q.energy_mev; });
    all.resize(n_levels);

    RadialSpectrum spec;
    spec.levels = std::move(all);
    spec.delta_e_r_mev = spec.levels[1].energy_mev - spec.levels[0].energy_mev;
    spec.ceiling_mev = ceiling_mev;
    spec.exceeds_ceiling = ceiling_mev > 0.0 && spec.delta_e_r_mev > ceiling_mev;
    return spec;
}

}  // namespace qdot
