#pragma once

#include <array>
#include <complex>

#include "lump/field.hpp"

namespace lump::balance {

using Complexd = std::complex<double>;

struct Configuration {
    std::array<Complexd, 3> z;
};

/// the reference equilateral configuration: -1, (1 + sqrt3 i)/2, (1 - sqrt3 i)/2
std::array<FieldElem, 3> reference_config();

/// F_j = sum_{k != j} (z_j - z_k)^{-3}
std::array<FieldElem, 3> F_map_exact(const std::array<FieldElem, 3>& z);
std::array<Complexd, 3> F_map(const Configuration& cfg);

/// holomorphic Jacobian dF_j/dz_k
std::array<std::array<Complexd, 3>, 3> F_jacobian(const Configuration& cfg);
std::array<std::array<FieldElem, 3>, 3> F_jacobian_exact(const std::array<FieldElem, 3>& z);

/// exact nullspace basis of the Jacobian at the reference configuration;
/// throws unless the nullity is exactly 2
std::array<std::array<FieldElem, 3>, 2> reference_kernel();

struct NewtonResult {
    Configuration cfg;
    double residual = 0;  // max_j |F_j|
    int iterations = 0;
    bool converged = false;
};

/// Gauss-Newton on F with the translation/scaling gauge fixed by pinning z1
/// and the centroid; the single remaining complex unknown is z2
NewtonResult newton_refine(const Configuration& start, double tol = 1e-12, int max_iter = 60);

/// distance from cfg to the orbit {c * ref + d} (least squares over c, d)
double orbit_distance(const Configuration& cfg);

struct InteractionConstants {
    double dstar, astar, bstar, cstar;
    double rel_err;  // worst refinement error estimate (relative where sensible)
};

/// d* = 24 int U^2; a*, b*, c* = int (3w^2 + 6w) d2U variants
InteractionConstants interaction_constants(double rel_tol = 1e-7);

struct ProjectionReport {
    double gamma;
    std::array<Complexd, 3> centers;
    std::array<double, 3> lhs_x, rhs_x;  // int E dxU_j vs -d* sum Re (z_j-z_k)^-3
    std::array<double, 3> lhs_y, rhs_y;  // int E dyU_j vs +d* sum Im (z_j-z_k)^-3
};

/// quadrature vs closed form of Lemma proj; centers are the exact P_j, with
/// center 1 optionally displaced by delta1
ProjectionReport projection_check(double B, Complexd delta1 = 0.0, double dstar_hint = 0);

struct PairingReport {
    double gamma;
    // off-diagonal x-x pairing, (j,k) = (1,2)
    double lhs_xx_12, rhs_xx_12;
    // diagonal x-x pairing at j = 1, with the a* p^2 correction in rhs
    double lhs_xx_11, rhs_xx_11;
    std::array<double, 3> p;  // p_k = -2 sum Re (z_k - z_j)^-2
};

/// quadrature vs closed form of Lemma pro1, using the local identity
/// L_u[dx U_k] = 6 (u - U_k) dx U_k
PairingReport pairing_check(double B, double dstar_hint = 0, double astar_hint = 0);

}  // namespace lump::balance
