#include "sivhs/series.hpp"

#include "sivhs/linalg.hpp"

namespace sivhs {

RingPtr make_ring(std::vector<std::string> names, std::vector<int> parity, int order, Window window) {
    if (names.size() != parity.size())
        throw ArgumentError("super_core", "parameter names and parities differ in length");
    if (order < 0) throw ArgumentError("super_core", "negative truncation order");
    auto r = std::make_shared<SeriesRing>();
    r->names = std::move(names);
    r->parity = std::move(parity);
    for (auto& p : r->parity) p &= 1;
    r->order = order;
    r->window = window;
    return r;
}

RingPtr with_order(const RingPtr& ring, int order) {
    return make_ring(ring->names, ring->parity, order, ring->window);
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a > b;
}

int mono_degree(const Mono& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

int mono_parity(const Mono& m, const SeriesRing& ring) {
    int p = 0;
    for (std::size_t a = 0; a < m.size(); ++a)
        if (ring.parity[a] & 1) p += m[a];
    return p & 1;
}

int mono_product(const Mono& a, const Mono& b, const SeriesRing& ring, Mono& out) {
    out.resize(a.size());
    long crossings = 0;
    long odd_in_a_after = 0;
    // Count pairs (odd j in a, odd i in b) with i < j by sweeping from the right.
    for (std::size_t k = a.size(); k-- > 0;) {
        const bool odd = ring.parity[k] & 1;
        if (odd) {
            if (a[k] && b[k]) return 0;
            if (b[k]) crossings += odd_in_a_after;
            if (a[k]) ++odd_in_a_after;
        }
        out[k] = static_cast<std::uint8_t>(a[k] + b[k]);
    }
    return sign_of(crossings);
}

std::string mono_str(const Mono& m, const SeriesRing& ring) {
    std::string s;
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (!m[a]) continue;
        if (!s.empty()) s += "*";
        s += ring.names[a];
        if (m[a] > 1) s += "^" + std::to_string(m[a]);
    }
    return s.empty() ? "1" : s;
}

Mono mono_var(const SeriesRing& ring, int a) {
    Mono m(ring.nvars(), 0);
    m.at(a) = 1;
    return m;
}

HSeries lift(const SuperSeries& s, int power) {
    HSeries r(s.ring());
    for (const auto& [m, c] : s.terms()) r.add_term(m, HbarLaurent::monomial(power, c, s.ring()->window));
    return r;
}

SuperSeries nu_part(const HSeries& s, int power) {
    SuperSeries r(s.ring());
    for (const auto& [m, c] : s.terms()) r.add_term(m, c.coefficient(power));
    return r;
}

std::vector<SuperSeries> series_invert_map(const std::vector<SuperSeries>& f) {
    if (f.empty()) return {};
    const RingPtr ring = f.front().ring();
    const std::size_t n = ring->nvars();
    if (f.size() != n) throw ArgumentError("super_core", "inversion needs one series per parameter");
    Matrix lin(n, n);
    std::vector<SuperSeries> nonlinear;
    for (std::size_t a = 0; a < n; ++a) {
        if (f[a].ring()->names != ring->names) throw StructuralError("super_core", "series over different rings");
        if (!CoefOps<Scalar>::is_zero(f[a].constant_term()))
            throw ArgumentError("super_core", "map does not fix the origin");
        if (!f[a].is_parity(ring->parity[a]))
            throw StructuralError("super_core", "component " + ring->names[a] + " has the wrong parity");
        SuperSeries rest = f[a];
        for (std::size_t b = 0; b < n; ++b) {
            Scalar c = f[a].coefficient(mono_var(*ring, static_cast<int>(b)));
            lin(a, b) = c;
            rest.add_term(mono_var(*ring, static_cast<int>(b)), -c);
        }
        nonlinear.push_back(rest);
    }
    auto inv = inverse(lin);
    if (!inv) {
        std::string dirs;
        for (const auto& v : nullspace(lin.transpose())) {
            std::string d;
            for (std::size_t a = 0; a < n; ++a)
                if (!v[a].is_zero()) d += (d.empty() ? "" : "+") + std::string("(") + v[a].str() + ")" + ring->names[a];
            dirs += (dirs.empty() ? "" : ", ") + d;
        }
        throw InversionError("super_core", "singular linear part; degenerate directions: " + dirs);
    }
    std::vector<SuperSeries> vars;
    for (std::size_t a = 0; a < n; ++a) vars.push_back(SuperSeries::variable(ring, static_cast<int>(a)));
    std::vector<SuperSeries> g(n, SuperSeries(ring));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!(*inv)(a, b).is_zero()) g[a] += vars[b].scaled((*inv)(a, b));
    for (int iter = 1; iter < ring->order; ++iter) {
        std::vector<SuperSeries> rhs(n, SuperSeries(ring));
        for (std::size_t b = 0; b < n; ++b) rhs[b] = vars[b] - compose(nonlinear[b], g, ring);
        std::vector<SuperSeries> next(n, SuperSeries(ring));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (!(*inv)(a, b).is_zero()) next[a] += rhs[b].scaled((*inv)(a, b));
        g = std::move(next);
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (!(compose(f[a], g, ring) == vars[a]) || !(compose(g[a], f, ring) == vars[a]))
            throw InvariantViolation("super_core", "fixed-point inversion did not converge for " + ring->names[a]);
    }
    return g;
}

} // namespace sivhs
