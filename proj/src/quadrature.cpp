#include "lump/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace lump::quad {

Rule gauss_legendre(unsigned n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Newton iteration from the Chebyshev-angle initial guess
    for (unsigned i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;  // Legendre recurrence
            for (unsigned k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1 - x * x) * pp * pp);
        r.nodes[i] = -x;
        r.weights[i] = w;
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

namespace {

double level_value(const std::function<double(double, double)>& f, double R, unsigned n) {
    Rule rule = gauss_legendre(n);
    // theta in (-pi/2, pi/2), x = R tan(theta), dx = R sec^2(theta) dtheta
    std::vector<double> x(n), jac(n);
    for (unsigned i = 0; i < n; ++i) {
        double th = rule.nodes[i] * M_PI / 2;
        double c = std::cos(th);
        x[i] = R * std::tan(th);
        jac[i] = rule.weights[i] * (M_PI / 2) * R / (c * c);
    }
    double sum = 0;
    for (unsigned i = 0; i < n; ++i) {
        double row = 0;
        for (unsigned j = 0; j < n; ++j) row += jac[j] * f(x[i], x[j]);
        sum += jac[i] * row;
    }
    return sum;
}

}  // namespace

Result integrate_plane(const std::function<double(double, double)>& f, double R,
                       double rel_tol, double abs_tol, unsigned n0, unsigned max_level) {
    Result res;
    double prev = 0;
    unsigned n = n0;
    for (unsigned level = 0; level <= max_level; ++level, n *= 2) {
        double v = level_value(f, R, n);
        res.points_per_dim = n;
        res.value = v;
        if (level > 0) {
            res.error_est = std::abs(v - prev);
            if (res.error_est <= std::max(abs_tol, rel_tol * std::abs(v))) {
                res.converged = true;
                return res;
            }
        }
        prev = v;
    }
    return res;
}

}  // namespace lump::quad
