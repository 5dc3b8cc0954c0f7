#pragma once

#include <functional>
#include <vector>

namespace lump::quad {

/// Gauss-Legendre nodes and weights on [-1, 1]
struct Rule {
    std::vector<double> nodes, weights;
};
Rule gauss_legendre(unsigned n);

struct Result {
    double value = 0;
    double error_est = 0;  // |last - previous| refinement difference
    unsigned points_per_dim = 0;
    bool converged = false;
};

/// Integral of f over the whole plane via the tangent map x = R tan(theta),
/// tensor Gauss rule, doubling the point count until two successive levels
/// agree to max(abs_tol, rel_tol * |value|).
Result integrate_plane(const std::function<double(double, double)>& f, double R,
                       double rel_tol = 1e-7, double abs_tol = 1e-12,
                       unsigned n0 = 96, unsigned max_level = 5);

}  // namespace lump::quad
