#include <algorithm>
#include <string>

#include "sivhs/deformation.hpp"

namespace sivhs {

namespace {

SElem half_bracket(const DgLieAlgebra& g, const SElem& x) {
    return apply_bilinear(g.bracket, x, x).scaled(Scalar(1, 2));
}

bool has_constant_term(const SElem& x) {
    for (const auto& [i, s] : x.c)
        if (s.min_degree() == 0) return true;
    return false;
}

} // namespace

Window default_window(int order, int weight) {
    const int w = 2 * (order + std::max(weight, 0));
    return {-w, w};
}

MCSolution solve_mc(const DgLieAlgebra& g, int order, const MCOptions& options) {
    if (order < 1) throw ArgumentError("deformation", "truncation order must be at least 1");
    if (g.d.src() != g.basis || g.bracket.left() != g.basis)
        throw StructuralError("deformation", "differential and bracket act on different bases");

    std::vector<SparseVec> preferred;
    if (g.unit) preferred.push_back(unit_vector(*g.unit));
    for (const auto& v : options.preferred) preferred.push_back(v);

    MCSolution sol;
    sol.order = order;
    sol.splitting = cohomology(g.d, preferred);
    const auto& H = sol.splitting;

    std::vector<int> chosen = options.subset;
    if (chosen.empty())
        for (std::size_t i = 0; i < H.dim(); ++i) chosen.push_back(static_cast<int>(i));
    for (int i : chosen)
        if (i < 0 || i >= static_cast<int>(H.dim()))
            throw ArgumentError("deformation", "representative index " + std::to_string(i) + " out of range");

    std::optional<int> unit_rep;
    if (g.unit)
        for (std::size_t i = 0; i < H.dim(); ++i)
            if (H.reps[i] == unit_vector(*g.unit)) unit_rep = static_cast<int>(i);
    if (unit_rep) {
        auto it = std::find(chosen.begin(), chosen.end(), *unit_rep);
        if (it != chosen.end()) {
            chosen.erase(it);
            chosen.insert(chosen.begin(), *unit_rep);
            sol.unit_param = 0;
        }
    }

    std::vector<std::string> names;
    std::vector<int> parity;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        names.push_back("t" + std::to_string(a));
        parity.push_back(H.rep_degrees[chosen[a]].parity());
        sol.param_rep.push_back(chosen[a]);
        sol.generators.push_back(H.reps[chosen[a]]);
    }
    sol.ring = make_ring(names, parity, order, options.window.value_or(default_window(order, options.weight)));

    sol.gamma = SElem(g.basis, sol.ring);
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        const auto t = SuperSeries::variable(sol.ring, static_cast<int>(a));
        for (const auto& [i, v] : sol.generators[a]) sol.gamma.add(i, t.scaled(v));
    }

    for (int k = 2; k <= order; ++k) {
        SElem q = half_bracket(g, sol.gamma).homogeneous(k);
        if (q.is_zero()) continue;
        SElem proj = apply_op(H.pi, q);
        if (!proj.is_zero()) sol.obstructions.push_back({k, proj});
        sol.gamma -= apply_op(H.h, q);
    }
    return sol;
}

SElem mc_residual(const DgLieAlgebra& g, const SElem& gamma) {
    return apply_op(g.d, gamma) + half_bracket(g, gamma);
}

SElem gauge_action(const DgLieAlgebra& g, const SElem& gamma, const SElem& x) {
    if (has_constant_term(x)) throw ArgumentError("deformation", "gauge parameter must vanish at the base point");
    for (const auto& [i, s] : x.c)
        if (!s.is_parity((g.basis->parity(i) + 1) & 1))
            throw ArgumentError("deformation", "gauge parameter must be total-odd");

    const int limit = gamma.ring->order + 1;
    auto ad = [&](const SElem& y) { return apply_bilinear(g.bracket, x, y); };

    SElem result = gamma;
    SElem term = gamma;
    for (int k = 1; k <= limit && !term.is_zero(); ++k) {
        term = ad(term).scaled(Scalar(1, k));
        result += term;
    }
    term = apply_op(g.d, x);
    SElem shift = term;
    for (int k = 1; k <= limit && !term.is_zero(); ++k) {
        term = ad(term).scaled(Scalar(1, k + 1));
        shift += term;
    }
    return result - shift;
}

MCSolution normalize_unit(const DgLieAlgebra& g, const MCSolution& sol) {
    if (!g.unit || !sol.unit_param)
        throw ConfigurationError("deformation", "unit class is not among the deformation parameters");
    const int u = *sol.unit_param;
    MCSolution out = sol;
    out.gamma = sol.gamma.map([u](const SuperSeries& s) { return s.without_var(u); });
    out.gamma.add(*g.unit, SuperSeries::variable(sol.ring, u));
    return out;
}

bool is_unit_normalized(const DgLieAlgebra& g, const MCSolution& sol) {
    if (!g.unit || !sol.unit_param) return false;
    return sol.gamma.derivative(*sol.unit_param) ==
           constant_element<Scalar>(g.basis, sol.ring, unit_vector(*g.unit));
}

} // namespace sivhs
