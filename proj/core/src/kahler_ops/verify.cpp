#include "sivhs/errors.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

namespace {

struct Checker {
    Report& rep;
    bool at_origin;
    std::map<std::string, std::string> failures;
    std::vector<std::string> order;

    void check(const std::string& name, const PolySection& defect, const std::string& witness) {
        if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
        const PolySection v = at_origin ? defect.at_origin() : defect;
        if (!v.is_zero() && !failures.count(name)) failures[name] = witness + " -> " + v.str();
    }

    void finish() {
        for (const auto& name : order) {
            auto it = failures.find(name);
            rep.add(name, it == failures.end(), it == failures.end() ? "" : it->second);
        }
    }
};

std::string pair_witness(const PolySection& k1, const PolySection& k2, const PolySection& s) {
    return "k1=" + k1.str() + "; k2=" + k2.str() + "; a=" + s.str();
}

} // namespace

Report verify_kahler_identities(const KahlerData& K, const std::vector<PolySection>& sections,
                        const std::vector<PolySection>& kappas, bool at_origin) {
    Report rep("Kahler operator identities");
    Checker ck{rep, at_origin, {}, {}};
    const auto ops = build_operators(K);
    const SectionOp q2 = op_compose(ops.Q, ops.Q);
    const SectionOp qd = op_bracket(ops.Q, ops.dbar);
    const SectionOp qs = op_bracket(ops.Q, ops.sharp);
    const SectionOp sd = op_bracket(ops.sharp, ops.dbar);
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const PolySection& s = sections[i];
        ck.check("Q = [sharp, dbar]", sd(s) - ops.Q(s), "a=" + s.str());
        ck.check("(a) Q^2 = 0", q2(s), "a=" + s.str());
        ck.check("(b) [Q, dbar] = 0", qd(s), "a=" + s.str());
        ck.check("(c) [Q, sharp] = 0", qs(s), "a=" + s.str());
        if (kappas.size() < 2) continue;
        const PolySection& k1 = kappas[i % kappas.size()];
        const PolySection& k2 = kappas[(i + 1) % kappas.size()];
        const SectionOp i1 = i_kappa(k1), i2 = i_kappa(k2);
        const PolySection br = bracket_omega(K, k1, k2);
        ck.check("(d) [i_k1, [Q, i_k2]] = -i_[k1.k2]", op_bracket(i1, op_bracket(ops.Q, i2))(s) + i_kappa(br)(s),
                 pair_witness(k1, k2, s));

        // Verbatim form on constant-coefficient kappas, where [k1.k2] vanishes.
        const PolySection c1 = k1.at_origin(), c2 = k2.at_origin();
        const SectionOp j1 = i_kappa(c1), j2 = i_kappa(c2);
        const int p1 = c1.parity(), p2 = c2.parity();
        PolySection lhs = op_bracket(i_kappa(c1 * c2), ops.Q)(s);
        PolySection rhs = op_compose(j1, op_bracket(j2, ops.Q))(s) +
                          op_compose(j2, op_bracket(j1, ops.Q))(s).scaled(sign_of(p1 * p2));
        ck.check("(e) [i_(k1 k2), Q] = i_k1[i_k2,Q] + (-1)^(k1 k2) i_k2[i_k1,Q]", lhs - rhs, pair_witness(c1, c2, s));

        // General kappas: derivation rule of the commutator.
        lhs = op_bracket(i_kappa(k1 * k2), ops.Q)(s);
        rhs = op_compose(i1, op_bracket(i2, ops.Q))(s) +
              op_compose(op_bracket(i1, ops.Q), i2)(s).scaled(sign_of(k2.parity()));
        ck.check("(e') [i_(k1 k2), Q] = i_k1[i_k2,Q] + (-1)^k2 [i_k1,Q] i_k2", lhs - rhs, pair_witness(k1, k2, s));
    }
    ck.finish();
    return rep;
}

Report verify_module_identities(const KahlerData& K, const std::vector<PolySection>& sections,
                                const std::vector<PolySection>& kappas, bool at_origin) {
    Report rep("Kahler module identities");
    Checker ck{rep, at_origin, {}, {}};
    const auto ops = build_operators(K);
    const SectionOp d = op_sum({ops.dbar, ops.Q});
    auto bullet = [&](const PolySection& k) { return op_scaled(op_bracket(i_kappa(k), ops.Q), -1); };
    const SectionOp dw = delta_omega(K);
    if (kappas.size() < 2) throw ArgumentError("kahler_ops", "need at least two kappas");
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const PolySection& a = sections[i];
        const PolySection& k1 = kappas[i % kappas.size()];
        const PolySection& k2 = kappas[(i + 1) % kappas.size()];
        const int p1 = k1.parity(), p2 = k2.parity();
        const PolySection br = bracket_omega(K, k1, k2);
        const std::string w = pair_witness(k1, k2, a);

        PolySection lhs = bullet(k1)(bullet(k2)(a)) - bullet(k2)(bullet(k1)(a)).scaled(sign_of((p1 + 1) * (p2 + 1)));
        ck.check("lie-module", lhs - bullet(br)(a), w);

        lhs = d(bullet(k1)(a));
        PolySection rhs = bullet(dbar_form(k1))(a) - bullet(k1)(d(a)).scaled(sign_of(p1));
        ck.check("bullet-differential", lhs - rhs, w);

        lhs = d(i_kappa(k1)(a));
        rhs = i_kappa(dbar_form(k1))(a) + i_kappa(k1)(d(a)).scaled(sign_of(p1)) + bullet(k1)(a).scaled(sign_of(p1));
        ck.check("circ-differential", lhs - rhs, w);

        lhs = i_kappa(k1)(bullet(k2)(a)) - bullet(k2)(i_kappa(k1)(a)).scaled(sign_of(p1 * p2 + p1));
        rhs = i_kappa(br)(a).scaled(-sign_of(p2));
        ck.check("circ-bullet", lhs - rhs, w);

        lhs = dbar_form(br);
        rhs = bracket_omega(K, dbar_form(k1), k2) - bracket_omega(K, k1, dbar_form(k2)).scaled(sign_of(p1));
        ck.check("bracket-leibniz", lhs - rhs, w);

        PolySection derived = dw(k1 * k2).scaled(sign_of(p1)) - (dw(k1) * k2).scaled(sign_of(p1)) - k1 * dw(k2);
        ck.check("poisson = derived bracket of [i_(omega^-1), dbar]", derived - br, w);
    }
    ck.finish();
    return rep;
}

} // namespace sivhs
