#pragma once

#include <complex>

namespace qdot {

struct PhononEnvironment {
    double mass_density_kgm3 = 5300.0;
    double sound_speed_mps = 3700.0;
    double deformation_potential_ev = 8.6;

    void validate() const;
};

// Analytic approximate dot shape used by the closed-form golden-rule kernel:
// infinite square well of height h along z, Bessel J0 ground state radially.
struct ApproxDotShape {
    double radius_a_nm = 13.0;
    double height_h_nm = 40.0;

    void validate() const;
};

// First zero of J0 and the radial normalization 1/N = int_0^{x01} r J0^2(r) dr.
double bessel_x01();
double radial_norm_inverse();            // closed form, = 0.7793...
double radial_norm_inverse_quadrature(); // quadrature cross-check

struct DimensionlessParams {
    double k10_per_nm = 0.0;  // K10 = E10 / (hbar c_s)
    double alpha = 0.0;       // K10 a / x01
    double beta = 0.0;        // K10 h / pi
};

DimensionlessParams dimensionless_params(double e10_mev, const PhononEnvironment& env,
                                         const ApproxDotShape& shape);

// Axial overlap (2/pi) int_{-pi/2}^{pi/2} cos(z) sin(2z) exp(i mu z) dz with
// mu = beta sqrt(1 - qp^2).  Purely imaginary; evaluated in closed form.
std::complex<double> axial_overlap(double beta, double qp);
std::complex<double> axial_overlap_quadrature(double beta, double qp, double rel_tol = 1e-12);

// Radial overlap N int_0^{x01} J0(alpha qp r) J0^2(r) r dr by panel
// quadrature with the panel count scaled by the oscillation count.
double radial_overlap(double alpha, double qp, double rel_tol = 1e-8);

// D^2 K10^3 / (4 pi hbar rho c_s^2) in 1/s.
double golden_rule_prefactor(double e10_mev, const PhononEnvironment& env);

struct PhononTolerances {
    double outer_rel = 1e-4;
    double radial_rel = 1e-8;
};

struct PhononResult {
    double rate_per_s = 0.0;
    double tau_s = 0.0;
    double prefactor_per_s = 0.0;
    double integral = 0.0;  // dimensionless q' integral
    DimensionlessParams params;
};

// Zero-temperature LA-phonon emission rate between the two lowest axial
// states.  The q' endpoint singularity is removed by q' = sin(theta).
PhononResult relaxation_rate(double e10_mev, const PhononEnvironment& env,
                             const ApproxDotShape& shape, const PhononTolerances& tol = {});

}  // namespace qdot
