#include "lump/backlund.hpp"

#include <algorithm>
#include <stdexcept>

namespace lump {

BacklundSystem BacklundSystem::back2(int mu_sign) {
    if (mu_sign != 1 && mu_sign != -1)
        throw std::invalid_argument("back2: mu_sign must be +1 or -1");
    // mu = sign/sqrt3 = sign*sqrt3/3
    return general(FieldElem(0, rat(mu_sign, 3), 0, 0), FieldElem::zero(), FieldElem::zero());
}

BacklundSystem BacklundSystem::general(const FieldElem& mu, const FieldElem& lambda,
                                       const FieldElem& v) {
    BacklundSystem s;
    s.direction = Leading::ZBAR;
    // D_x^2 + mu D_x + (i/sqrt3) D_y - lambda
    s.eq1.add(2, 0, FieldElem::one());
    s.eq1.add(1, 0, mu);
    s.eq1.add(0, 1, FieldElem(0, 0, 0, rat(1, 3)));
    s.eq1.add(0, 0, -lambda);
    // (3 lambda - 1) D_x - sqrt3 i mu D_y + D_x^3 - sqrt3 i D_x D_y + v
    s.eq2.add(1, 0, FieldElem(3) * lambda - FieldElem::one());
    s.eq2.add(0, 1, -FieldElem::sqrt3_i() * mu);
    s.eq2.add(3, 0, FieldElem::one());
    s.eq2.add(1, 1, -FieldElem::sqrt3_i());
    s.eq2.add(0, 0, v);
    return s;
}

BacklundSystem BacklundSystem::gh() {
    BacklundSystem s;
    s.direction = Leading::Z;
    // 2 D_z - sqrt3 D_x^2
    s.eq1 = BilinearOp::two_dz();
    s.eq1.add(2, 0, -FieldElem::sqrt3());
    // 2 D_z + sqrt3 i D_x D_y - D_x^3
    s.eq2 = BilinearOp::two_dz();
    s.eq2.add(1, 1, FieldElem::sqrt3_i());
    s.eq2.add(3, 0, -FieldElem::one());
    return s;
}

std::set<unsigned> jn_roots(unsigned n) {
    // j^2 - (2n+1) j + n(n-1) = 0, discriminant 8n+1
    std::set<unsigned> roots;
    for (long j = 0; j <= 2 * (long)n + 1; ++j)
        if ((long)n * ((long)n - 1) - 2 * (long)n * j + j * (j - 1) == 0)
            roots.insert((unsigned)j);
    return roots;
}

FieldElem subleading_coefficient(unsigned n, unsigned j) {
    long nl = n, jl = j;
    if (nl - jl + 1 == 0)
        throw std::domain_error("subleading_coefficient: singular at n - j + 1 = 0");
    // c = -(j-n)(j+n-1) / (2 sqrt3 (n-j+1)) = -(j-n)(j+n-1) sqrt3 / (6(n-j+1))
    Rational r = rat(-(jl - nl) * (jl + nl - 1), 6 * (nl - jl + 1));
    return FieldElem(0, r, 0, 0);
}

namespace {

// the top graded part of f must be a single monomial with coefficient 1
std::pair<unsigned, unsigned> top_monomial(const ParamPoly& f) {
    int d = f.degree();
    if (d < 0) throw std::invalid_argument("chain_step: zero polynomial");
    ParamPoly top = f.homogeneous_component((unsigned)d);
    if (top.terms.size() != 1)
        throw std::invalid_argument("chain_step: top graded part is not a single monomial");
    auto& [pq, c] = *top.terms.begin();
    if (c != ParamScalar(FieldElem::one()))
        throw std::invalid_argument("chain_step: top coefficient is not 1");
    return pq;
}

std::string unknown_name(unsigned a, unsigned b) {
    return "_u" + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

ChainStepResult chain_step(const ParamPoly& f, const BacklundSystem& system, unsigned j) {
    ParamPoly fz = f.basis == Basis::ZZBAR ? f : f.convert(Basis::ZZBAR);
    if (!boussinesq_residual(fz).is_zero())
        throw std::invalid_argument("chain_step: f does not solve the bilinear equation");

    auto [tp, tq] = top_monomial(fz);
    unsigned n, gp, gq;  // g's top monomial z^gp zb^gq
    if (system.direction == Leading::ZBAR) {
        if (tp != tq)
            throw std::invalid_argument("chain_step: ZBAR-leading system needs top z^n zb^n");
        n = tq;
        if (n > 0 && !fz.homogeneous_component(2 * n - 1).is_zero())
            throw std::invalid_argument("chain_step: subleading part of f must vanish "
                                        "(translate first)");
        gp = j, gq = n;
    } else {
        n = tq;
        gp = tp, gq = j;
    }
    auto roots = jn_roots(n);
    if (!roots.count(j))
        throw std::invalid_argument("chain_step: j=" + std::to_string(j) +
                                    " is not an admissible index for n=" + std::to_string(n));
    const unsigned m = gp + gq;

    // unknown coefficients at every exponent pair below the top degree
    std::map<uint32_t, std::pair<unsigned, unsigned>> unknowns;
    ParamPoly gsym = ParamPoly::monomial(Basis::ZZBAR, gp, gq);
    for (unsigned a = 0; a < m; ++a)
        for (unsigned b = 0; a + b < m; ++b) {
            uint32_t id = symbols::intern(unknown_name(a, b));
            unknowns.emplace(id, std::make_pair(a, b));
            gsym += ParamPoly::monomial(Basis::ZZBAR, a, b, ParamScalar::symbol(id));
        }

    // positions where the compatibility analysis allows a free parameter
    std::set<std::pair<unsigned, unsigned>> free_pos;
    for (unsigned r : roots) {
        auto pos = system.direction == Leading::ZBAR ? std::make_pair(r, n)
                                                     : std::make_pair(gp, r);
        if (pos.first + pos.second < m) free_pos.insert(pos);
    }

    // linear equations: every coefficient of both residuals
    std::vector<ParamScalar> eqs;
    ParamPoly res1 = apply_op(system.eq1, fz, gsym), res2 = apply_op(system.eq2, fz, gsym);
    for (const ParamPoly* r : {&res1, &res2})
        for (auto& [pq, c] : r->terms) eqs.push_back(c);

    // elimination order: pinned (non-free) positions first, high degree first
    std::vector<uint32_t> order;
    for (auto& [id, pq] : unknowns) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
        auto px = unknowns.at(x), py = unknowns.at(y);
        bool fx = free_pos.count(px), fy = free_pos.count(py);
        if (fx != fy) return fy;  // free positions last
        if (px.first + px.second != py.first + py.second)
            return px.first + px.second > py.first + py.second;
        return px > py;
    });

    std::vector<std::pair<uint32_t, ParamScalar>> solved;  // in solve order
    std::set<uint32_t> done;
    auto eliminate = [&](uint32_t u, ParamScalar expr) {
        for (auto& e : eqs) e = e.substitute(u, expr);
        solved.emplace_back(u, std::move(expr));
        done.insert(u);
    };
    auto coeff_is_clean = [&](const ParamScalar& c) {
        // a pivot coefficient may involve inherited parameters, but never
        // another unknown
        for (uint32_t s : c.symbols_used())
            if (unknowns.count(s)) return false;
        return true;
    };
    for (bool progress = true; progress;) {
        progress = false;
        // first tier: pivots with constant coefficients
        for (uint32_t u : order) {
            if (done.count(u)) continue;
            for (auto& eq : eqs) {
                if (!eq.depends_on(u)) continue;
                ParamScalar c = eq.linear_coeff(u);
                if (!c.is_constant()) continue;
                ParamScalar rest = eq.substitute(u, ParamScalar());
                eliminate(u, rest * ParamScalar(-FieldElem::one() / c.constant_value()));
                progress = true;
                break;
            }
        }
        if (progress) continue;
        // second tier: a parameter-dependent pivot is acceptable when the
        // coefficient divides the rest of the equation exactly, so the
        // eliminated unknown stays polynomial in the parameters
        for (uint32_t u : order) {
            if (done.count(u) || progress) continue;
            for (auto& eq : eqs) {
                if (!eq.depends_on(u)) continue;
                ParamScalar c = eq.linear_coeff(u);
                if (!coeff_is_clean(c)) continue;
                ParamScalar rest = eq.substitute(u, ParamScalar());
                if (auto quo = rest.div_exact(c)) {
                    eliminate(u, -*quo);
                    progress = true;
                    break;
                }
            }
        }
    }

    // every surviving equation must have collapsed to zero
    for (auto& eq : eqs)
        if (!eq.is_zero()) {
            bool has_unknown = false;
            for (uint32_t s : eq.symbols_used())
                if (unknowns.count(s)) has_unknown = true;
            throw std::runtime_error(
                has_unknown
                    ? "chain_step: no constant pivot for a remaining unknown (parameter-"
                      "dependent pivot): " + eq.str()
                    : "chain_step: inconsistent system, residual constraint " + eq.str());
        }

    // unsolved unknowns must sit exactly at the predicted free positions
    ChainStepResult result;
    std::map<uint32_t, ParamScalar> bind;
    for (uint32_t u : order)
        if (!done.count(u)) {
            auto pq = unknowns.at(u);
            if (!free_pos.count(pq))
                throw std::runtime_error("chain_step: unexpected free coefficient at z^" +
                                         std::to_string(pq.first) + " zb^" +
                                         std::to_string(pq.second));
            uint32_t fresh = symbols::intern("c" + std::to_string(pq.first) + "_" +
                                             std::to_string(pq.second));
            result.free_parameters.push_back({pq.first + pq.second, pq, fresh});
            bind.emplace(u, ParamScalar::symbol(fresh));
        }
    std::sort(result.free_parameters.begin(), result.free_parameters.end(),
              [](const FreeParam& x, const FreeParam& y) { return x.level > y.level; });

    // back-substitute, later solutions into earlier expressions
    for (auto it = solved.rbegin(); it != solved.rend(); ++it)
        bind[it->first] = it->second.substitute(bind);

    result.transform = gsym.substitute_params(bind);

    auto [r1, r2] = verify_pair(fz, result.transform, system);
    if (!r1.is_zero() || !r2.is_zero())
        throw std::runtime_error("chain_step: internal error, residual check failed");
    return result;
}

ChainResult chain_all(const ParamPoly& f, const BacklundSystem& system) {
    ParamPoly fz = f.basis == Basis::ZZBAR ? f : f.convert(Basis::ZZBAR);
    unsigned n = top_monomial(fz).second;
    ChainResult out;
    for (unsigned j : jn_roots(n)) out.transforms.push_back(chain_step(fz, system, j));
    return out;
}

std::pair<ParamPoly, ParamPoly> verify_pair(const ParamPoly& f, const ParamPoly& g,
                                            const BacklundSystem& system) {
    return {apply_op(system.eq1, f, g), apply_op(system.eq2, f, g)};
}

}  // namespace lump
