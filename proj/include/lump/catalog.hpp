#pragma once

#include <array>

#include "lump/ratfn.hpp"

namespace lump::catalog {

// ---- tau families -----------------------------------------------------

/// x^2 + y^2 + 3
ParamPoly tau2();
/// x^2 + (y - 2 sqrt3 i/3)^2 + 3, the non-real degree-2 tau behind h_{A,B}
ParamPoly tau2_shifted();
/// the degree-4 family with free symbol alpha (chain output, normalized)
ParamPoly g4();
/// degree-4 member connecting tau2_shifted to h_{A,B}: g4 shifted and bound
ParamPoly g4AB();
/// the degree-6 family with free symbols alpha, beta
ParamPoly h6();
/// h_{A,B}: h6 shifted y -> y - 2 sqrt3 i/3 with
/// alpha - beta = A i - 211/(3 sqrt3), alpha + beta = B - 3 sqrt3
ParamPoly realize_hAB();
ParamPoly hAB();  // cached realize_hAB()
ParamPoly h00();  // hAB at A = B = 0
/// L = x^2 + y^2 + 3 (same polynomial as tau2; named per its section-3 role)
ParamPoly Lpoly();

// ---- rational solutions ------------------------------------------------

struct RationalSolution {
    ParamPoly tau;
    RationalFunction u;  // 2 (tau tau_xx - tau_x^2) / tau^2
};

/// requires is_real_valued(tau)
RationalSolution solution_from_tau(const ParamPoly& tau);

/// classical lump U = 4 (y^2 - x^2 + 3) / L^2
RationalFunction lumpU();
/// omega = d/dx [ 24 x (y^2 - 3) / L^2 ]
RationalFunction omega();
/// u_{A,B} with symbolic A, B
RationalFunction uAB();
/// exact near-kernel fields of the linearization at u_{0,0}:
/// {dx u, dy u, dA u, dB u} evaluated at A = B = 0
std::array<RationalFunction, 4> kernel_fields_h00();

/// numerical positivity check of a (param-free, real) tau on the plane:
/// coarse grid minimum plus local zoom refinement
bool tau_positive(const ParamPoly& tau, double extent, unsigned n = 201);

// ---- peak geometry and the section-3 identities ------------------------

struct PeakSet {
    double gamma;                              // (B/2)^(1/3)
    std::array<std::array<double, 2>, 3> points;  // P1, P2, P3
};

/// requires B > 0
PeakSet peaks(double B);

/// phi(P_j) = 0 and dx phi(P_j) = 0 identically in gamma, with B = 2 gamma^3
bool peak_residuals_vanish();

struct EtaReport {
    ParamPoly eta;                      // h_{0,B} - L1 L2 L3, gamma symbolic
    std::array<ParamScalar, 3> at_peaks;  // eta(P_j) as polynomials in gamma
};
EtaReport eta_error();

/// max over an (2n+1)^2 grid of |u_{0,B} - (U1+U2+U3)|; the grid spans
/// [-extent, extent]^2 with extent = extent_factor * gamma
double sup_error(double B, double extent_factor = 4.0, unsigned n = 160);

/// the six Re/Im derivative identities for (y^2-x^2)/(x^2+y^2)^2
bool check_zz_identities();
/// both identities of Eq. (Lw), in d_x^2-differentiated (local) form
bool check_omega_identities();

}  // namespace lump::catalog
