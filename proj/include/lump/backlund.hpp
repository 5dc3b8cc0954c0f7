#pragma once

#include <set>

#include "lump/hirota.hpp"

namespace lump {

/// Which first-order operator dominates the top degree of the system.
enum class Leading { ZBAR, Z };

struct BacklundSystem {
    BilinearOp eq1, eq2;
    Leading direction;

    /// the polynomial Backlund system with lambda = v = 0 and mu = +-1/sqrt3
    /// (pass the sign); equations act on f.g
    static BacklundSystem back2(int mu_sign);
    /// the degree-4 -> degree-6 system, acting on g.h
    static BacklundSystem gh();
    /// the full three-parameter transformation
    static BacklundSystem general(const FieldElem& mu, const FieldElem& lambda,
                                  const FieldElem& v);
};

/// nonnegative integer roots j of n(n-1) - 2nj + j(j-1) = 0
std::set<unsigned> jn_roots(unsigned n);

/// coefficient c in g_{m-1} = sqrt3 n z^j zb^{n-1} + c z^{j-1} zb^n
FieldElem subleading_coefficient(unsigned n, unsigned j);

struct FreeParam {
    unsigned level;                    // total degree of the carrying term
    std::pair<unsigned, unsigned> pq;  // exponent pair in (z, zb)
    uint32_t symbol;                   // fresh parameter symbol
};

struct ChainStepResult {
    ParamPoly transform;               // ZZBAR basis, leading coefficient 1
    std::vector<FreeParam> free_parameters;
};

/// Build the Backlund transform of f with leading index j, degree by degree.
/// f must solve the bilinear equation; for ZBAR-leading systems its top
/// graded part must be z^n zb^n with the subleading part zero.
ChainStepResult chain_step(const ParamPoly& f, const BacklundSystem& system, unsigned j);

struct ChainResult {
    std::vector<ChainStepResult> transforms;  // one per admissible leading index
};

/// run chain_step for every admissible j
ChainResult chain_all(const ParamPoly& f, const BacklundSystem& system);

/// both residuals of the system on the pair (f, g), exactly
std::pair<ParamPoly, ParamPoly> verify_pair(const ParamPoly& f, const ParamPoly& g,
                                            const BacklundSystem& system);

}  // namespace lump
