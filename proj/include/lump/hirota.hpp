#pragma once

#include "lump/poly.hpp"

namespace lump {

/// Formal combination sum_k coeff_k * D_x^{mx_k} D_y^{my_k} of Hirota
/// bilinear derivative operators.
class BilinearOp {
  public:
    struct Term {
        unsigned mx, my;
        FieldElem coeff;
    };
    std::vector<Term> terms;  // merged, no zero coefficients

    BilinearOp() = default;

    static BilinearOp dxy(unsigned mx, unsigned my, FieldElem c = FieldElem::one());
    /// 2 D_z = D_x - i D_y, scaled by c
    static BilinearOp two_dz(FieldElem c = FieldElem::one());
    /// 2 D_zbar = D_x + i D_y, scaled by c
    static BilinearOp two_dzbar(FieldElem c = FieldElem::one());

    BilinearOp& add(unsigned mx, unsigned my, const FieldElem& c);
    friend BilinearOp operator+(const BilinearOp& a, const BilinearOp& b);
    friend BilinearOp operator-(const BilinearOp& a, const BilinearOp& b);
    BilinearOp scaled(const FieldElem& c) const;

    std::string str() const;
};

/// D_x^mx D_y^my f.g via the signed Leibniz expansion
/// sum_{a,b} (-1)^{mx-a+my-b} C(mx,a) C(my,b) (dx^a dy^b f)(dx^{mx-a} dy^{my-b} g)
ParamPoly hirota_apply(unsigned mx, unsigned my, const ParamPoly& f, const ParamPoly& g);

/// apply a formal operator combination to f.g
ParamPoly apply_op(const BilinearOp& op, const ParamPoly& f, const ParamPoly& g);

/// (D_x^4 - D_x^2 - D_y^2) tau.tau
ParamPoly boussinesq_residual(const ParamPoly& tau);

/// parse e.g. "D_x^4 - D_x^2 - D_y^2" or "3*D_x D_y^2 + i*D_y"
BilinearOp parse_bilinear_op(const std::string& text);

}  // namespace lump
