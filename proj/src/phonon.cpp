#include "qdot/phonon.hpp"

#include <cmath>
#include <numbers>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"
#include "qdot/quadrature.hpp"
#include "qdot/radial.hpp"

namespace qdot {

using std::numbers::pi;

void PhononEnvironment::validate() const {
    if (!(mass_density_kgm3 > 0.0) || !(sound_speed_mps > 0.0) ||
        !(deformation_potential_ev > 0.0))
        throw ConfigError("phonon: environment parameters must be strictly positive");
}

void ApproxDotShape::validate() const {
    if (!(radius_a_nm > 0.0) || !(height_h_nm > 0.0))
        throw ConfigError("phonon: dot shape parameters must be strictly positive");
}

double bessel_x01() {
    static const double x = bessel_j_zero(0, 1);
    return x;
}

double radial_norm_inverse() {
    // int_0^{x01} r J0^2 dr = (x01^2 / 2) J1(x01)^2 since J0(x01) = 0.
    const double x01 = bessel_x01();
    const double j1 = std::cyl_bessel_j(1.0, x01);
    return 0.5 * x01 * x01 * j1 * j1;
}

double radial_norm_inverse_quadrature() {
    auto f = [](double r) {
        const double j0 = std::cyl_bessel_j(0.0, r);
        return r * j0 * j0;
    };
    return integrate_adaptive(f, 0.0, bessel_x01(), 1e-12, 8).value;
}

DimensionlessParams dimensionless_params(double e10_mev, const PhononEnvironment& env,
                                         const ApproxDotShape& shape) {
    env.validate();
    shape.validate();
    if (!(e10_mev > 0.0)) throw ConfigError("dimensionless_params: E10 must be positive");
    const double k10_per_m =
        e10_mev * constants::mev_J / (constants::hbar_Js * env.sound_speed_mps);
    DimensionlessParams p;
    p.k10_per_nm = k10_per_m * 1e-9;
    p.alpha = p.k10_per_nm * shape.radius_a_nm / bessel_x01();
    p.beta = p.k10_per_nm * shape.height_h_nm / pi;
    return p;
}

namespace {

// sin(pi x / 2) / x with the removable singularity at x = 0.
double half_sinc(double x) {
    if (std::abs(x) < 1e-6) {
        const double u = 0.5 * pi * x;
        return 0.5 * pi * (1.0 - u * u / 6.0);
    }
    return std::sin(0.5 * pi * x) / x;
}

}  // namespace

std::complex<double> axial_overlap(double beta, double qp) {
    if (qp < 0.0 || qp > 1.0) throw ConfigError("axial_overlap: qp must be in [0, 1]");
    const double mu = beta * std::sqrt(std::max(0.0, 1.0 - qp * qp));
    // cos(z) sin(2z) = (sin(3z) + sin(z)) / 2; each sine integrates against
    // exp(i mu z) over [-pi/2, pi/2] to an imaginary half_sinc pair.
    const double imag = (half_sinc(3.0 - mu) - half_sinc(3.0 + mu) + half_sinc(1.0 - mu) -
                         half_sinc(1.0 + mu)) /
                        pi;
    return {0.0, imag};
}

std::complex<double> axial_overlap_quadrature(double beta, double qp, double rel_tol) {
    const double mu = beta * std::sqrt(std::max(0.0, 1.0 - qp * qp));
    const int panels = 8 + static_cast<int>(std::ceil(mu));
    auto re = gk15_composite(
        [mu](double z) { return std::cos(z) * std::sin(2.0 * z) * std::cos(mu * z); }, -pi / 2,
        pi / 2, panels);
    auto im = gk15_composite(
        [mu](double z) { return std::cos(z) * std::sin(2.0 * z) * std::sin(mu * z); }, -pi / 2,
        pi / 2, panels);
    (void)rel_tol;
    return std::complex<double>(re.value, im.value) * (2.0 / pi);
}

double radial_overlap(double alpha, double qp, double rel_tol) {
    if (qp < 0.0 || qp > 1.0) throw ConfigError("radial_overlap: qp must be in [0, 1]");
    if (alpha < 0.0) throw ConfigError("radial_overlap: alpha must be >= 0");
    const double x01 = bessel_x01();
    const double arg = alpha * qp;
    auto f = [arg](double r) {
        const double j0 = std::cyl_bessel_j(0.0, r);
        return std::cyl_bessel_j(0.0, arg * r) * j0 * j0 * r;
    };
    // Panel count follows the number of J0(alpha qp r) oscillations.
    const int n0 = std::max(8, static_cast<int>(std::ceil(4.0 * (1.0 + arg * x01 / (2.0 * pi)))));
    const auto q = integrate_adaptive(f, 0.0, x01, rel_tol, n0, 8);
    return q.value / radial_norm_inverse();
}

double golden_rule_prefactor(double e10_mev, const PhononEnvironment& env) {
    env.validate();
    if (!(e10_mev > 0.0)) throw ConfigError("golden_rule_prefactor: E10 must be positive");
    const double d_J = env.deformation_potential_ev * constants::q_C;
    const double k10 =
        e10_mev * constants::mev_J / (constants::hbar_Js * env.sound_speed_mps);  // 1/m
    return d_J * d_J * k10 * k10 * k10 /
           (4.0 * pi * constants::hbar_Js * env.mass_density_kgm3 * env.sound_speed_mps *
            env.sound_speed_mps);
}

PhononResult relaxation_rate(double e10_mev, const PhononEnvironment& env,
                             const ApproxDotShape& shape, const PhononTolerances& tol) {
    PhononResult out;
    out.params = dimensionless_params(e10_mev, env, shape);
    out.prefactor_per_s = golden_rule_prefactor(e10_mev, env);

    const double alpha = out.params.alpha;
    const double beta = out.params.beta;
    auto integrand = [&](double theta) {
        const double qp = std::sin(theta);
        const double r = radial_overlap(alpha, qp, tol.radial_rel);
        const double a = std::abs(axial_overlap(beta, qp).imag());
        return qp * r * r * a * a;
    };
    // With q' = sin(theta) the 1/sqrt(1-q'^2) weight cancels and the
    // integrand is finite on [0, pi/2].  Panels track the oscillation count.
    const int n0 = std::max(16, static_cast<int>(std::ceil((alpha + beta) / 2.0)));
    const auto q = integrate_adaptive(integrand, 0.0, pi / 2, tol.outer_rel, n0, 8);
    out.integral = q.value;
    out.rate_per_s = out.prefactor_per_s * out.integral;
    if (!(out.rate_per_s > 0.0))
        throw NumericError("relaxation_rate: non-positive rate from quadrature");
    out.tau_s = 1.0 / out.rate_per_s;
    return out;
}

}  // namespace qdot
