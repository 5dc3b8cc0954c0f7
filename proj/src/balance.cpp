#include "lump/balance.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lump/catalog.hpp"
#include "lump/quadrature.hpp"

namespace lump::balance {

namespace {

FieldElem cube_inv(const FieldElem& d) { return (d * d * d).inv(); }

Complexd cube_inv(Complexd d) { return 1.0 / (d * d * d); }

void check_distinct(const Configuration& cfg) {
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k)
            if (std::abs(cfg.z[j] - cfg.z[k]) == 0.0)
                throw std::domain_error("balance: coincident configuration points");
}

}  // namespace

std::array<FieldElem, 3> reference_config() {
    return {FieldElem(-1),
            FieldElem(rat(1, 2), 0, 0, rat(1, 2)),     // (1 + sqrt3 i)/2
            FieldElem(rat(1, 2), 0, 0, rat(-1, 2))};   // (1 - sqrt3 i)/2
}

std::array<FieldElem, 3> F_map_exact(const std::array<FieldElem, 3>& z) {
    std::array<FieldElem, 3> F;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            if (k == j) continue;
            FieldElem d = z[j] - z[k];
            if (d.is_zero()) throw std::domain_error("balance: coincident configuration points");
            F[j] += cube_inv(d);
        }
    return F;
}

std::array<Complexd, 3> F_map(const Configuration& cfg) {
    check_distinct(cfg);
    std::array<Complexd, 3> F{};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            if (k != j) F[j] += cube_inv(cfg.z[j] - cfg.z[k]);
    return F;
}

std::array<std::array<Complexd, 3>, 3> F_jacobian(const Configuration& cfg) {
    check_distinct(cfg);
    std::array<std::array<Complexd, 3>, 3> J{};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            if (k == j) continue;
            Complexd d = cfg.z[j] - cfg.z[k];
            Complexd e = 3.0 / (d * d * d * d);
            J[j][k] = e;
            J[j][j] -= e;
        }
    return J;
}

std::array<std::array<FieldElem, 3>, 3> F_jacobian_exact(const std::array<FieldElem, 3>& z) {
    std::array<std::array<FieldElem, 3>, 3> J;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            if (k == j) continue;
            FieldElem d = z[j] - z[k];
            if (d.is_zero()) throw std::domain_error("balance: coincident configuration points");
            FieldElem e = FieldElem(3) * (d * d * d * d).inv();
            J[j][k] = e;
            J[j][j] -= e;
        }
    return J;
}

std::array<std::array<FieldElem, 3>, 2> reference_kernel() {
    auto z = reference_config();
    auto J = F_jacobian_exact(z);
    // exact row echelon form
    std::vector<std::array<FieldElem, 3>> rows(J.begin(), J.end());
    unsigned rank = 0;
    for (unsigned col = 0; col < 3 && rank < rows.size(); ++col) {
        unsigned piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        FieldElem inv = rows[rank][col].inv();
        for (auto& v : rows[rank]) v = v * inv;
        for (unsigned r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            FieldElem f = rows[r][col];
            for (unsigned c = 0; c < 3; ++c) rows[r][c] = rows[r][c] - f * rows[rank][c];
        }
        ++rank;
    }
    if (rank != 1)
        throw std::logic_error("reference_kernel: Jacobian rank is not 1, nullity is not 2");
    // with rank 1 the echelon row determines the two free columns
    unsigned pivot_col = 0;
    while (rows[0][pivot_col].is_zero()) ++pivot_col;
    std::array<std::array<FieldElem, 3>, 2> basis{};
    unsigned b = 0;
    for (unsigned free = 0; free < 3; ++free) {
        if (free == pivot_col) continue;
        basis[b][free] = FieldElem::one();
        basis[b][pivot_col] = -rows[0][free];
        ++b;
    }
    for (auto& v : basis) {
        auto Jv0 = FieldElem::zero();
        for (int j = 0; j < 3; ++j) {
            FieldElem s;
            for (int k = 0; k < 3; ++k) s += J[j][k] * v[k];
            if (!s.is_zero()) throw std::logic_error("reference_kernel: basis check failed");
        }
        (void)Jv0;
    }
    return basis;
}

NewtonResult newton_refine(const Configuration& start, double tol, int max_iter) {
    check_distinct(start);
    NewtonResult res;
    Complexd z1 = start.z[0];
    Complexd centroid = (start.z[0] + start.z[1] + start.z[2]) / 3.0;
    Complexd z2 = start.z[1];
    auto assemble = [&](Complexd w) {
        return Configuration{{z1, w, 3.0 * centroid - z1 - w}};
    };
    for (res.iterations = 0; res.iterations <= max_iter; ++res.iterations) {
        Configuration cfg = assemble(z2);
        auto F = F_map(cfg);
        double rnorm = 0;
        for (auto& f : F) rnorm = std::max(rnorm, std::abs(f));
        res.cfg = cfg;
        res.residual = rnorm;
        if (rnorm < tol) {
            res.converged = true;
            return res;
        }
        // Gauss-Newton in the single holomorphic unknown z2 (z3 = const - z2)
        auto J = F_jacobian(cfg);
        Complexd num = 0;
        double den = 0;
        for (int j = 0; j < 3; ++j) {
            Complexd d = J[j][1] - J[j][2];  // dF_j/dz2 with the gauge applied
            num += std::conj(d) * F[j];
            den += std::norm(d);
        }
        if (den == 0) return res;  // singular reduced system: report as-is
        z2 -= num / den;
    }
    return res;
}

double orbit_distance(const Configuration& cfg) {
    std::array<Complexd, 3> ref;
    auto zr = reference_config();
    for (int j = 0; j < 3; ++j) ref[j] = zr[j].to_complex();
    // least squares over (c, d): minimize sum |c ref_j + d - z_j|^2
    Complexd sr = 0, sz = 0, srz = 0;
    double srr = 0;
    for (int j = 0; j < 3; ++j) {
        sr += ref[j];
        sz += cfg.z[j];
        srz += std::conj(ref[j]) * cfg.z[j];
        srr += std::norm(ref[j]);
    }
    double n = 3;
    Complexd c = (n * srz - std::conj(sr) * sz) / (n * srr - std::norm(sr));
    Complexd d = (sz - c * sr) / n;
    double dist2 = 0;
    for (int j = 0; j < 3; ++j) dist2 += std::norm(c * ref[j] + d - cfg.z[j]);
    return std::sqrt(dist2);
}

// ---------------------------------------------------------------------------

namespace {

const CompiledRatFn& cUx() {
    static CompiledRatFn f(catalog::lumpU().diff(Var::X));
    return f;
}
const CompiledRatFn& cUy() {
    static CompiledRatFn f(catalog::lumpU().diff(Var::Y));
    return f;
}
const CompiledRatFn& cUxx() {
    static CompiledRatFn f(catalog::lumpU().diff(Var::X).diff(Var::X));
    return f;
}
const CompiledRatFn& cUxy() {
    static CompiledRatFn f(catalog::lumpU().diff(Var::X).diff(Var::Y));
    return f;
}
const CompiledRatFn& cUyy() {
    static CompiledRatFn f(catalog::lumpU().diff(Var::Y).diff(Var::Y));
    return f;
}
const CompiledRatFn& comega() {
    static CompiledRatFn f(catalog::omega());
    return f;
}

double Uval(double x, double y) {
    double L = x * x + y * y + 3;
    return 4 * (y * y - x * x + 3) / (L * L);
}

double dstar_cached() {
    static double d = quad::integrate_plane(
                          [](double x, double y) {
                              double u = Uval(x, y);
                              return 24 * u * u;
                          },
                          6.0, 1e-9)
                          .value;
    return d;
}

}  // namespace

InteractionConstants interaction_constants(double rel_tol) {
    auto wfun = [](double x, double y) { return comega()(x, y); };
    auto weight = [&](double x, double y) {
        double w = wfun(x, y);
        return 3 * w * w + 6 * w;
    };
    quad::Result rd = quad::integrate_plane(
        [](double x, double y) {
            double u = Uval(x, y);
            return 24 * u * u;
        },
        6.0, rel_tol);
    quad::Result ra = quad::integrate_plane(
        [&](double x, double y) { return weight(x, y) * cUxx()(x, y); }, 6.0, rel_tol);
    quad::Result rb = quad::integrate_plane(
        [&](double x, double y) { return weight(x, y) * cUxy()(x, y); }, 6.0, rel_tol);
    quad::Result rc = quad::integrate_plane(
        [&](double x, double y) { return weight(x, y) * cUyy()(x, y); }, 6.0, rel_tol);
    if (!rd.converged || !ra.converged || !rb.converged || !rc.converged)
        throw std::runtime_error("interaction_constants: quadrature did not converge");
    double err = 0;
    for (auto* r : {&rd, &ra, &rc})
        err = std::max(err, r->error_est / std::max(1e-30, std::abs(r->value)));
    err = std::max(err, rb.error_est);  // b* is a zero target: absolute error
    return {rd.value, ra.value, rb.value, rc.value, err};
}

namespace {

std::array<Complexd, 3> centers_for(double B, Complexd delta1) {
    auto pk = catalog::peaks(B);
    std::array<Complexd, 3> c;
    for (int j = 0; j < 3; ++j) c[j] = Complexd(pk.points[j][0], pk.points[j][1]) + (j == 0 ? delta1 : 0.0);
    return c;
}

}  // namespace

ProjectionReport projection_check(double B, Complexd delta1, double dstar_hint) {
    double ds = dstar_hint > 0 ? dstar_hint : dstar_cached();
    auto pk = catalog::peaks(B);
    auto c = centers_for(B, delta1);
    ProjectionReport rep;
    rep.gamma = pk.gamma;
    rep.centers = c;
    auto Uj = [&](int j, double x, double y) {
        return Uval(x - c[j].real(), y - c[j].imag());
    };
    auto E = [&](double x, double y) {
        double u1 = Uj(0, x, y), u2 = Uj(1, x, y), u3 = Uj(2, x, y);
        return 6 * (u1 * u2 + u2 * u3 + u1 * u3);
    };
    for (int j = 0; j < 3; ++j) {
        auto lx = quad::integrate_plane(
            [&](double x, double y) {
                return E(x, y) * cUx()(x - c[j].real(), y - c[j].imag());
            },
            2 * pk.gamma, 1e-4, 1e-11, 256, 3);
        auto ly = quad::integrate_plane(
            [&](double x, double y) {
                return E(x, y) * cUy()(x - c[j].real(), y - c[j].imag());
            },
            2 * pk.gamma, 1e-4, 1e-11, 256, 3);
        rep.lhs_x[j] = lx.value;
        rep.lhs_y[j] = ly.value;
        Complexd s = 0;
        for (int k = 0; k < 3; ++k)
            if (k != j) s += cube_inv(c[j] - c[k]);
        rep.rhs_x[j] = -ds * s.real();
        rep.rhs_y[j] = ds * s.imag();
    }
    return rep;
}

PairingReport pairing_check(double B, double dstar_hint, double astar_hint) {
    double ds = dstar_hint > 0 ? dstar_hint : dstar_cached();
    double as = astar_hint;
    if (as == 0) as = interaction_constants(1e-6).astar;
    auto pk = catalog::peaks(B);
    auto c = centers_for(B, 0.0);
    PairingReport rep;
    rep.gamma = pk.gamma;
    for (int k = 0; k < 3; ++k) {
        double p = 0;
        for (int j = 0; j < 3; ++j)
            if (j != k) p += (1.0 / ((c[k] - c[j]) * (c[k] - c[j]))).real();
        rep.p[k] = -2 * p;
    }
    // exact u_{0,B}
    ParamScalar Bs{FieldElem(Rational(B))};
    ParamPoly hb = catalog::hAB().substitute_params(
        {{symbols::A(), ParamScalar()}, {symbols::B(), Bs}});
    CompiledRatFn u(catalog::solution_from_tau(hb).u);
    auto Uj = [&](int j, double x, double y) {
        return Uval(x - c[j].real(), y - c[j].imag());
    };
    auto Uxj = [&](int j, double x, double y) {
        return cUx()(x - c[j].real(), y - c[j].imag());
    };
    // off-diagonal: int dxU_1 L_u[dxU_2] = 6 int dxU_1 (u - U_2) dxU_2
    auto l12 = quad::integrate_plane(
        [&](double x, double y) {
            return 6 * Uxj(0, x, y) * (u(x, y) - Uj(1, x, y)) * Uxj(1, x, y);
        },
        2 * pk.gamma, 1e-4, 1e-12, 256, 3);
    Complexd d12 = c[0] - c[1];
    rep.lhs_xx_12 = l12.value;
    rep.rhs_xx_12 = 3 * ds * (1.0 / (d12 * d12 * d12 * d12)).real();
    // diagonal: int dxU_1 L_u[dxU_1] = 6 int (dxU_1)^2 (u - U_1)
    auto l11 = quad::integrate_plane(
        [&](double x, double y) {
            double g = Uxj(0, x, y);
            return 6 * g * g * (u(x, y) - Uj(0, x, y));
        },
        2 * pk.gamma, 1e-4, 1e-12, 256, 3);
    Complexd s = 0;
    for (int k = 1; k < 3; ++k) {
        Complexd d = c[0] - c[k];
        s += 1.0 / (d * d * d * d);
    }
    rep.lhs_xx_11 = l11.value;
    rep.rhs_xx_11 = -3 * ds * s.real() + as * rep.p[0] * rep.p[0];
    return rep;
}

}  // namespace lump::balance
