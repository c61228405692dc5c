#include <string>

#include "sivhs/deformation.hpp"

namespace sivhs {

namespace {

HElem basis_element(const BasisPtr& basis, const RingPtr& ring, int i) {
    return constant_element<HbarLaurent>(basis, ring, unit_vector(i));
}

std::string describe(const HElem& x) {
    std::string s = x.str();
    if (s.size() > 240) s = s.substr(0, 240) + "...";
    return s;
}

} // namespace

HElem circ_apply(const DgModule& m, const SElem& gamma, const HElem& a, int circ_nu) {
    return shift_nu(apply_bilinear(m.circ, lift_element(gamma.in_ring(a.ring)), a), circ_nu);
}

HElem exp_circ(const DgModule& m, const SElem& gamma, const HElem& a, int circ_nu, int sign) {
    HElem result = a;
    HElem term = a;
    const int limit = a.ring->order + 1;
    for (int k = 1; k <= limit && !term.is_zero(); ++k) {
        term = circ_apply(m, gamma, term, circ_nu).scaled(Scalar(sign, k));
        result += term;
    }
    return result;
}

HElem transport(const DgModule& m, const SElem& gamma, const HElem& a, int circ_nu) {
    return exp_circ(m, gamma, a, circ_nu, -1);
}

HElem module_differential(const DgModule& m, const HElem& a, ModuleScaling scaling) {
    return apply_op(m.d, a) + shift_nu(apply_op(m.delta, a), scaling.delta_nu);
}

HElem twisted_differential(const DgModule& m, const SElem& gamma, const HElem& a, ModuleScaling scaling) {
    return module_differential(m, a, scaling) + apply_bilinear(m.bullet, lift_element(gamma.in_ring(a.ring)), a);
}

HElem covariant_derivative(const DgModule& m, const SElem& gamma, int param, const HElem& x, int circ_nu) {
    return x.derivative(param) + circ_apply(m, gamma.derivative(param), x, circ_nu);
}

Report verify_conjugation(const DgModule& m, const SElem& gamma, ModuleScaling scaling) {
    Report r("conjugation");
    std::string witness;
    for (std::size_t i = 0; i < m.basis->dim() && witness.empty(); ++i) {
        const HElem e = basis_element(m.basis, gamma.ring, static_cast<int>(i));
        const HElem lifted = exp_circ(m, gamma, e, scaling.circ_nu, 1);
        const HElem lhs = exp_circ(m, gamma, module_differential(m, lifted, scaling), scaling.circ_nu, -1);
        const HElem rhs = twisted_differential(m, gamma, e, scaling);
        if (!(lhs == rhs)) witness = m.basis->name(static_cast<int>(i)) + ": " + describe(lhs - rhs);
    }
    r.add("e^{-G o} D e^{G o} = D^G", witness.empty(), witness);
    return r;
}

Report verify_flatness_identities(const DgLieAlgebra& g, const DgModule& m, const SElem& gamma,
                                  ModuleScaling scaling) {
    if (gamma.basis != g.basis) throw StructuralError("deformation", "Gamma is not an element of g");
    Report r("flatness");
    const auto& ring = gamma.ring;
    const int keep = ring->order - 1;
    const int params = static_cast<int>(ring->nvars());
    const int cnu = scaling.circ_nu;
    std::string w_nabla, w_d;

    for (std::size_t i = 0; i < m.basis->dim(); ++i) {
        const HElem e = basis_element(m.basis, ring, static_cast<int>(i));
        const HElem De = twisted_differential(m, gamma, e, scaling);
        std::vector<HElem> ne;
        for (int a = 0; a < params; ++a) ne.push_back(covariant_derivative(m, gamma, a, e, cnu));
        for (int a = 0; a < params; ++a) {
            const int pa = ring->parity[a] & 1;
            if (w_d.empty()) {
                HElem c = covariant_derivative(m, gamma, a, De, cnu);
                HElem back = twisted_differential(m, gamma, ne[a], scaling);
                c = (pa ? c + back : c - back).truncated(keep);
                if (!c.is_zero())
                    w_d = ring->names[a] + " on " + m.basis->name(static_cast<int>(i)) + ": " + describe(c);
            }
            for (int b = a; b < params && w_nabla.empty(); ++b) {
                const int pb = ring->parity[b] & 1;
                HElem ab = covariant_derivative(m, gamma, a, ne[b], cnu);
                HElem ba = covariant_derivative(m, gamma, b, ne[a], cnu);
                HElem c = ((pa & pb) ? ab + ba : ab - ba).truncated(keep);
                if (!c.is_zero())
                    w_nabla = ring->names[a] + "," + ring->names[b] + " on " +
                              m.basis->name(static_cast<int>(i)) + ": " + describe(c);
            }
        }
    }
    r.add("[nabla_a, nabla_b] = 0", w_nabla.empty(), w_nabla);
    r.add("[nabla_a, D^G] = 0", w_d.empty(), w_d);
    return r;
}

} // namespace sivhs
