#include <algorithm>
#include <map>

#include "sivhs/errors.hpp"
#include "sivhs/vhs.hpp"

namespace sivhs {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

// Splitting of the classes of parity s into F(s) + W(s).
struct Splitter {
    std::vector<int> f;
    std::size_t total = 0;
    std::shared_ptr<LinearSolver> solver;
};

Splitter make_splitter(const VhsFrame& frame, const OppositeFiltration& w, int s) {
    Splitter sp;
    sp.f = hodge_classes(frame, s);
    std::vector<SparseVec> cols;
    for (int j : sp.f) cols.push_back(unit_vector(j));
    for (const auto& v : independent_subset(w.at(frame, s), frame.dim())) cols.push_back(v);
    for (std::size_t j = 0; j < frame.dim(); ++j)
        if (mod2(frame.hodge(static_cast<int>(j)) - s) == 0) ++sp.total;
    sp.solver = std::make_shared<LinearSolver>(Matrix::from_columns(cols, frame.dim()));
    return sp;
}

// Quotient W(s) / W(s-2) with a chosen complement.
struct Quotient {
    std::size_t rank = 0;
    std::shared_ptr<LinearSolver> solver;
};

Quotient make_quotient(const VhsFrame& frame, const OppositeFiltration& w, int s) {
    const std::size_t dim = frame.dim();
    auto lower = independent_subset(w.at(frame, s - 2), dim);
    std::vector<SparseVec> comp;
    std::vector<SparseVec> span = lower;
    for (const auto& v : w.at(frame, s)) {
        if (in_span(span, v, dim)) continue;
        span.push_back(v);
        comp.push_back(v);
    }
    Quotient q;
    q.rank = comp.size();
    comp.insert(comp.end(), lower.begin(), lower.end());
    q.solver = std::make_shared<LinearSolver>(Matrix::from_columns(comp, dim));
    return q;
}

struct RowKey {
    int power;
    std::size_t index;
    friend auto operator<=>(const RowKey&, const RowKey&) = default;
};

} // namespace

PeriodMap period_map(const ModelPair& pair, const MCSolution& sol, const VhsFrame& frame,
                     const OppositeFiltration& w_in, const SparseVec& eta, const PeriodOptions& options) {
    if (!sol.unobstructed()) throw PreconditionError("vhs", "period map needs an unobstructed solution");
    PeriodMap P;
    P.frame = frame;
    P.w = w_in;
    validate_filtration(frame, P.w);
    P.ring = sol.ring;
    P.order = sol.order;
    P.unit_param = sol.unit_param;
    const int n = frame.n;
    const auto& ring = sol.ring;

    const auto eta_c = frame.coordinates(eta);
    HElem y0 = constant_element<HbarLaurent>(frame.classes, ring, sparse(eta_c));
    P.eta = l_hbar(frame, y0);
    P.eta_weight = 0;
    if (!y0.c.empty()) P.eta_weight = frame.weight[y0.c.begin()->first];

    auto T = [&](const HElem& y) {
        HElem moved = exp_circ(pair.m, sol.gamma, to_module(frame, y), options.circ_nu, 1);
        return l_hbar(frame, to_classes(frame, moved));
    };

    std::map<int, Splitter> splitters;
    auto splitter = [&](int s) -> const Splitter& {
        auto it = splitters.find(s);
        if (it == splitters.end()) it = splitters.emplace(s, make_splitter(frame, P.w, s)).first;
        return it->second;
    };

    P.psi = T(y0);
    for (int k = 1; k <= sol.order; ++k) {
        Slices rest = slices_of(P.psi.homogeneous(k));
        Slices ys;
        for (const auto& [key, v] : rest) {
            const int s = n - key.power;
            for (const auto& [j, c] : v)
                if (mod2(frame.hodge(j) - s) != 0)
                    throw InvariantViolation("vhs", "class " + frame.classes->name(j) + " at nu^" +
                                                        std::to_string(key.power) + " has the wrong parity");
            const Splitter& sp = splitter(s);
            ++P.rank_checks;
            auto x = sp.solver->solve(dense(v, frame.dim()));
            if (sp.solver->rank() != sp.total || sp.solver->unknowns() != sp.total || !x) {
                ++P.rank_failures;
                throw InvariantViolation("vhs", "period map solve is not unique at r = " + format_r(s));
            }
            for (std::size_t i = 0; i < sp.f.size(); ++i) {
                if ((*x)[i].is_zero()) continue;
                const int j = sp.f[i];
                const int power = key.power - frame.weight[j];
                ys[SliceKey{key.mono, power}][j] = -(*x)[i];
            }
        }
        if (ys.empty()) continue;
        P.psi += T(element_of(ys, frame.classes, ring));
    }

    // Flat coordinates from (Psi - eta) mod hbar^{-1} L_W.
    std::map<int, Quotient> quotients;
    auto quotient = [&](int s) -> const Quotient& {
        auto it = quotients.find(s);
        if (it == quotients.end()) it = quotients.emplace(s, make_quotient(frame, P.w, s)).first;
        return it->second;
    };
    const std::size_t params = ring->nvars();
    std::map<RowKey, std::vector<SuperSeries>> rows;
    Slices all = slices_of(P.psi - P.eta);
    for (const auto& [key, v] : all) {
        const Quotient& q = quotient(n - key.power);
        auto x = q.solver->solve(dense(v, frame.dim()));
        if (!x) throw InvariantViolation("vhs", "Psi - eta leaves L_W at nu^" + std::to_string(key.power));
        for (std::size_t i = 0; i < q.rank; ++i) {
            if ((*x)[i].is_zero()) continue;
            auto& row = rows[RowKey{key.power, i}];
            if (row.empty()) row.assign(1, SuperSeries(ring));
            row[0] += SuperSeries::monomial(ring, key.mono, (*x)[i]);
        }
    }
    if (rows.size() != params)
        throw InversionError("vhs", "reduced period map has " + std::to_string(rows.size()) + " components for " +
                                        std::to_string(params) + " parameters");
    Matrix lin(params, params);
    std::vector<SuperSeries> comps;
    std::size_t r = 0;
    for (const auto& [key, row] : rows) {
        for (std::size_t a = 0; a < params; ++a) lin(r, a) = row[0].coefficient(mono_var(*ring, static_cast<int>(a)));
        comps.push_back(row[0]);
        ++r;
    }
    auto inv = inverse(lin);
    if (!inv) throw InversionError("vhs", "reduced period map has a singular linear part");
    for (std::size_t a = 0; a < params; ++a) {
        SuperSeries s(ring);
        for (std::size_t k = 0; k < params; ++k)
            if (!(*inv)(a, k).is_zero()) s += comps[k].scaled((*inv)(a, k));
        if (!s.is_parity(ring->parity[a] & 1))
            throw InvariantViolation("vhs", "flat coordinate " + ring->names[a] + " is not homogeneous in parity");
        P.tw_of_t.push_back(s);
    }
    for (std::size_t a = 0; a < params; ++a) {
        const Mono m = mono_var(*ring, static_cast<int>(a));
        std::optional<int> power;
        for (const auto& [j, s] : P.psi.c) {
            const HbarLaurent lin = s.coefficient(m);
            for (const auto& [k, c] : lin.terms()) {
                if (c.is_zero()) continue;
                if (power && *power != k)
                    throw InvariantViolation("vhs", "linear term in " + ring->names[a] + " is not nu-homogeneous");
                power = k;
            }
        }
        if (!power) throw InversionError("vhs", "period map has no linear term in " + ring->names[a]);
        P.nu_shift.push_back(*power - P.eta_weight);
    }
    P.t_of_tw = series_invert_map(P.tw_of_t);
    P.psi_flat = compose_element(P.psi, P.t_of_tw, ring);
    return P;
}

Report verify_period_map(const PeriodMap& p) {
    Report r("period map");
    const auto& ring = p.ring;
    const int n = p.frame.n;
    r.add("Psi(0) = eta", p.psi.homogeneous(0) == p.eta, p.psi.homogeneous(0).str());

    std::string outside;
    for (const auto& [key, v] : slices_of(p.psi - p.eta)) {
        const auto W = p.w.at(p.frame, n - key.power);
        if (!in_span(W, v, p.frame.dim())) {
            outside = mono_str(key.mono, *ring) + " nu^" + std::to_string(key.power);
            break;
        }
    }
    r.add("Psi - eta in L_W", outside.empty(), outside);

    if (p.unit_param) {
        const int u = *p.unit_param;
        const int keep = p.order - 1;
        const bool plain = p.psi.derivative(u).truncated(keep) == shift_nu(p.psi.truncated(keep), -2);
        const bool flat = p.psi_flat.derivative(u).truncated(keep) == shift_nu(p.psi_flat.truncated(keep), -2);
        r.add("d Psi / d t0 = Psi / hbar", plain && flat, plain ? "flat coordinates" : "original coordinates");
    }
    r.add("period map solves are unique", p.rank_failures == 0 && p.rank_checks > 0,
          std::to_string(p.rank_failures) + " of " + std::to_string(p.rank_checks));

    std::vector<SuperSeries> ids;
    for (std::size_t a = 0; a < ring->nvars(); ++a) ids.push_back(SuperSeries::variable(ring, static_cast<int>(a)));
    bool round = true;
    for (std::size_t a = 0; a < ring->nvars(); ++a)
        if (!(compose(p.tw_of_t[a], p.t_of_tw, ring) == ids[a])) round = false;
    r.add("flat coordinate round trip", round);
    return r;
}

} // namespace sivhs
