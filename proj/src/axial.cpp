#include "qdot/axial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

std::vector<double> build_potential(const QDGeometry& geometry, double field_mvpm,
                                    const AxialGrid& grid) {
    geometry.validate();
    grid.validate();
    if (!std::isfinite(field_mvpm)) throw ConfigError("build_potential: field must be finite");

    const double half = geometry.stack_thickness_nm() / 2.0;
    if (grid.z_min_nm > -half || grid.z_max_nm < half)
        throw ConfigError("build_potential: grid does not cover the layer stack");

    // Layer boundaries measured from the stack midpoint.
    std::vector<double> edges;
    edges.reserve(geometry.layers.size() + 1);
    double pos = -half;
    edges.push_back(pos);
    for (const auto& l : geometry.layers) {
        pos += l.thickness_nm;
        edges.push_back(pos);
    }

    std::vector<double> v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double z = grid.z(i);
        double vs = grid.boundary_potential_mev;
        if (z >= -half && z <= half) {
            auto it = std::upper_bound(edges.begin(), edges.end(), z);
            std::size_t layer = (it == edges.begin()) ? 0 : (it - edges.begin() - 1);
            if (layer >= geometry.layers.size()) layer = geometry.layers.size() - 1;
            vs = geometry.layers[layer].potential_mev;
        }
        v[i] = vs + field_mvpm * z;  // q * (1 MV/m) * (1 nm) = 1 meV
    }
    return v;
}

namespace {

// Eigenvalues of the symmetric tridiagonal matrix below x, by the Sturm
// sequence of the shifted LDL^T recurrence.  Uniform off-diagonal.
int sturm_count(const std::vector<double>& diag, double off, double x) {
    const double off2 = off * off;
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0) ++count;
    const double tiny = 1e-300;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        double denom = q;
        if (denom == 0.0) denom = tiny;
        q = diag[i] - x - off2 / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

double bisect_eigenvalue(const std::vector<double>& diag, double off, int index, double lo,
                         double hi) {
    for (int it = 0; it < 140; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, off, mid) > index)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-14 * std::max({std::abs(lo), std::abs(hi), 1.0})) break;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - lambda I) x = b for tridiagonal T with partial pivoting.
// du/dl are the uniform off-diagonals; fill-in creates a second superdiagonal.
void shifted_tridiag_solve(const std::vector<double>& diag, double off, double lambda,
                           std::vector<double>& x, std::vector<double>& d0,
                           std::vector<double>& d1, std::vector<double>& d2,
                           std::vector<int>& piv) {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        d0[i] = diag[i] - lambda;
        d1[i] = off;
        d2[i] = 0.0;
    }
    std::vector<double> sub(n, off);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i + 1]) > std::abs(d0[i])) {
            std::swap(d0[i], sub[i + 1]);
            std::swap(d1[i], d0[i + 1]);
            std::swap(d2[i], d1[i + 1]);
            std::swap(x[i], x[i + 1]);
            piv[i] = 1;
        } else {
            piv[i] = 0;
        }
        double denom = d0[i];
        if (denom == 0.0) denom = 1e-300;
        const double m = sub[i + 1] / denom;
        d0[i + 1] -= m * d1[i];
        d1[i + 1] -= m * d2[i];
        x[i + 1] -= m * x[i];
    }
    for (std::size_t ri = n; ri-- > 0;) {
        double s = x[ri];
        if (ri + 1 < n) s -= d1[ri] * x[ri + 1];
        if (ri + 2 < n) s -= d2[ri] * x[ri + 2];
        double denom = d0[ri];
        if (denom == 0.0) denom = 1e-300;
        x[ri] = s / denom;
    }
}

// Deterministic start vector for inverse iteration.
void seed_vector(std::vector<double>& v, int level) {
    std::uint64_t s = 0x9e3779b97f4a7c15ull + 0x100000001b3ull * (level + 1);
    for (auto& x : v) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        x = (static_cast<double>(s >> 11) / 9007199254740992.0) - 0.5;
    }
}

}  // namespace

AxialSpectrum solve_axial(const std::vector<double>& potential_mev, const AxialGrid& grid,
                          double effective_mass_ratio, int k) {
    grid.validate();
    if (static_cast<int>(potential_mev.size()) != grid.n_points)
        throw ConfigError("solve_axial: potential length does not match grid");
    if (k < 3) throw ConfigError("solve_axial: need k >= 3 (levels |0>, |1>, |2>)");
    if (!(effective_mass_ratio > 0.0))
        throw ConfigError("solve_axial: mass ratio must be positive");

    const int n = grid.n_points - 2;  // interior points, hard walls at the ends
    if (k > n) throw ConfigError("solve_axial: k exceeds interior grid size");
    const double h = grid.spacing_nm();
    const double t = constants::hbar2_over_2me / effective_mass_ratio;  // meV nm^2
    const double off = -t / (h * h);

    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = 2.0 * t / (h * h) + potential_mev[i + 1];

    const auto [dmin_it, dmax_it] = std::minmax_element(diag.begin(), diag.end());
    const double lo = *dmin_it - 2.0 * std::abs(off);
    const double hi = *dmax_it + 2.0 * std::abs(off);

    AxialSpectrum spec;
    spec.grid = grid;
    spec.energies_mev.resize(k);
    spec.wavefunctions.assign(k, std::vector<double>(grid.n_points, 0.0));

    std::vector<double> x(n), d0(n), d1(n), d2(n);
    std::vector<int> piv(n, 0);
    std::vector<std::vector<double>> found;
    const double matrix_scale = std::max(std::abs(*dmin_it), std::abs(*dmax_it)) + 2.0 * std::abs(off);

    for (int level = 0; level < k; ++level) {
        double lambda = bisect_eigenvalue(diag, off, level, lo, hi);

        // Inverse iteration at a slightly shifted eigenvalue estimate.
        const double shift = lambda + 1e-14 * matrix_scale;
        seed_vector(x, level);
        double residual = 0.0;
        bool converged = false;
        for (int it = 0; it < 10; ++it) {
            shifted_tridiag_solve(diag, off, shift, x, d0, d1, d2, piv);
            for (const auto& prev : found) {  // deflate close neighbors
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += prev[i] * x[i];
                for (int i = 0; i < n; ++i) x[i] -= dot * prev[i];
            }
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) nrm += x[i] * x[i];
            nrm = std::sqrt(nrm);
            if (nrm == 0.0) {
                seed_vector(x, level + 17 * (it + 1));
                continue;
            }
            for (int i = 0; i < n; ++i) x[i] /= nrm;

            // Rayleigh quotient sharpens the bisection eigenvalue.
            double rq = 0.0;
            residual = 0.0;
            for (int i = 0; i < n; ++i) {
                double tv = diag[i] * x[i];
                if (i > 0) tv += off * x[i - 1];
                if (i + 1 < n) tv += off * x[i + 1];
                rq += x[i] * tv;
            }
            for (int i = 0; i < n; ++i) {
                double r = (diag[i] - rq) * x[i];
                if (i > 0) r += off * x[i - 1];
                if (i + 1 < n) r += off * x[i + 1];
                residual += r * r;
            }
            residual = std::sqrt(residual);
            if (residual < 1e-12 * matrix_scale) {
                lambda = rq;
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream os;
            os << "solve_axial: inverse iteration did not converge for level " << level
               << " (residual " << residual << " vs tol " << 1e-12 * matrix_scale << ", lambda "
               << lambda << " meV)";
            throw NumericError(os.str());
        }
        spec.energies_mev[level] = lambda;
        found.push_back(x);

        // Normalize under the trapezoid rule (endpoints are zero).
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) norm2 += x[i] * x[i];
        norm2 *= h;
        const double scale = 1.0 / std::sqrt(norm2);
        auto& psi = spec.wavefunctions[level];
        for (int i = 0; i < n; ++i) psi[i + 1] = x[i] * scale;

        // Fix a reproducible global sign: first significant lobe positive.
        double peak = 0.0;
        for (int i = 0; i < grid.n_points; ++i) peak = std::max(peak, std::abs(psi[i]));
        for (int i = 0; i < grid.n_points; ++i) {
            if (std::abs(psi[i]) > 1e-3 * peak) {
                if (psi[i] < 0.0)
                    for (auto& v : psi) v = -v;
                break;
            }
        }
    }
    return spec;
}

AxialSpectrum solve_axial_at(const QDGeometry& geometry, const AxialGrid& grid,
                             double field_mvpm, int k) {
    auto v = build_potential(geometry, field_mvpm, grid);
    auto spec = solve_axial(v, grid, geometry.effective_mass_ratio, k);
    spec.field_mvpm = field_mvpm;
    return spec;
}

double dipole_z(const AxialSpectrum& spectrum, int i, int j) {
    const auto& a = spectrum.wavefunctions.at(i);
    const auto& b = spectrum.wavefunctions.at(j);
    const double h = spectrum.grid.spacing_nm();
    double s = 0.0;
    for (int m = 0; m < spectrum.grid.n_points; ++m) s += a[m] * spectrum.grid.z(m) * b[m];
    return s * h;
}

double expectation_z2(const AxialSpectrum& spectrum, int i) {
    const auto& a = spectrum.wavefunctions.at(i);
    const double h = spectrum.grid.spacing_nm();
    double s = 0.0;
    for (int m = 0; m < spectrum.grid.n_points; ++m) {
        const double z = spectrum.grid.z(m);
        s += a[m] * z * z * a[m];
    }
    return s * h;
}

double wavefunction_overlap(const AxialSpectrum& a, int i, const AxialSpectrum& b, int j) {
    const auto& pa = a.wavefunctions.at(i);
    const auto& pb = b.wavefunctions.at(j);
    const double h = a.grid.spacing_nm();
    double s = 0.0;
    for (std::size_t m = 0; m < pa.size(); ++m) s += pa[m] * pb[m];
    return s * h;
}

int count_nodes(const std::vector<double>& psi, double rel_threshold) {
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    const double thr = rel_threshold * peak;
    int nodes = 0;
    double last = 0.0;
    for (double v : psi) {
        if (std::abs(v) <= thr) continue;
        if (last != 0.0 && ((v > 0) != (last > 0))) ++nodes;
        last = v;
    }
    return nodes;
}

double parity_defect(const AxialSpectrum& spectrum, int i) {
    const auto& psi = spectrum.wavefunctions.at(i);
    const int n = spectrum.grid.n_points;
    const double h = spectrum.grid.spacing_nm();
    double overlap = 0.0;
    for (int m = 0; m < n; ++m) overlap += psi[m] * psi[n - 1 - m];
    return 1.0 - std::abs(overlap * h);
}

}  // namespace qdot
