#include "qdot/quadrature.hpp"

#include <cmath>

#include "qdot/errors.hpp"

namespace qdot {

namespace {

// Classical 15-point Kronrod extension of 7-point Gauss (QUADPACK tables).
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

void gk15_panel(const std::function<double(double)>& f, double a, double b, double& kronrod,
                double& gauss) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(c);
    kronrod = wgk[7] * fc;
    gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = hl * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        kronrod += wgk[j] * fsum;
        if (j % 2 == 1) gauss += wg[j / 2] * fsum;
    }
    kronrod *= hl;
    gauss *= hl;
}

}  // namespace

QuadResult gk15_composite(const std::function<double(double)>& f, double a, double b,
                          int n_panels) {
    if (n_panels < 1) n_panels = 1;
    const double w = (b - a) / n_panels;
    double total = 0.0;
    double err = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        double k, g;
        gk15_panel(f, a + p * w, a + (p + 1) * w, k, g);
        total += k;
        err += std::abs(k - g);
    }
    return {total, err, n_panels};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, int n_panels_start, int max_doublings) {
    QuadResult prev = gk15_composite(f, a, b, n_panels_start);
    for (int d = 0; d < max_doublings; ++d) {
        const double scale = std::abs(prev.value);
        if (prev.error_estimate <= rel_tol * scale && scale > 0.0) return prev;
        QuadResult next = gk15_composite(f, a, b, prev.panels * 2);
        const double change = std::abs(next.value - prev.value);
        if (change <= rel_tol * std::abs(next.value) ||
            (next.value == 0.0 && change == 0.0)) {
            next.error_estimate = change;
            return next;
        }
        prev = next;
    }
    throw NumericError("integrate_adaptive: quadrature did not converge to requested tolerance");
}

}  // namespace qdot
