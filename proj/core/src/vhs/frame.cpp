#include "sivhs/vhs.hpp"

#include "sivhs/errors.hpp"

namespace sivhs {

int VhsFrame::hodge(int j) const {
    const Bidegree b = classes->bidegree(j);
    return b.p - b.q;
}

std::vector<Scalar> VhsFrame::coordinates(const SparseVec& v) const {
    auto x = solver->solve(dense(v, module_basis->dim()));
    if (!x) throw InvariantViolation("vhs", "element " + format_vec(v, *module_basis) + " leaves the harmonic span");
    return *x;
}

SparseVec VhsFrame::to_module(const std::vector<Scalar>& c) const {
    SparseVec v;
    for (std::size_t j = 0; j < c.size(); ++j)
        if (!c[j].is_zero()) axpy(v, c[j], reps[j]);
    return v;
}

VhsFrame make_frame(const ModelPair& pair, const std::vector<SparseVec>& reps) {
    VhsFrame f;
    f.n = pair.n;
    f.module_basis = pair.m.basis;
    f.reps = reps.empty() ? harmonic_representatives(pair.m.d, pair.m.delta) : reps;
    if (f.reps.empty()) throw ConfigurationError("vhs", "module has no harmonic classes");
    std::vector<std::string> names;
    std::vector<Bidegree> degs;
    for (const auto& r : f.reps) {
        if (r.empty()) throw ArgumentError("vhs", "zero harmonic representative");
        const Bidegree b = pair.m.basis->bidegree(r.begin()->first);
        for (const auto& [i, c] : r)
            if (pair.m.basis->bidegree(i) != b) throw ArgumentError("vhs", "inhomogeneous harmonic representative");
        names.push_back(r.size() == 1 && r.begin()->second == Scalar(1) ? pair.m.basis->name(r.begin()->first)
                                                                        : format_vec(r, *pair.m.basis));
        degs.push_back(b);
        f.weight.push_back(f.n + b.q - b.p);
    }
    f.classes = make_basis(names, degs);
    const std::size_t dim = pair.m.basis->dim();
    f.solver = std::make_shared<const LinearSolver>(Matrix::from_columns(f.reps, dim));
    if (f.solver->rank() != f.reps.size()) throw ArgumentError("vhs", "harmonic representatives are dependent");
    if (pair.pairing) {
        const Matrix& G = *pair.pairing;
        Matrix h(f.dim(), f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i)
            for (std::size_t j = 0; j < f.dim(); ++j) {
                Scalar s;
                for (const auto& [k, a] : f.reps[i])
                    for (const auto& [l, b] : f.reps[j]) s += a * b * G(k, l);
                h(i, j) = s;
            }
        f.gram = h;
    }
    return f;
}

HElem to_classes(const VhsFrame& frame, const HElem& x) {
    Slices in = slices_of(x);
    Slices out;
    for (const auto& [key, v] : in) {
        auto c = frame.coordinates(v);
        SparseVec s = sparse(c);
        if (!s.empty()) out[key] = s;
    }
    return element_of(out, frame.classes, x.ring);
}

HElem to_module(const VhsFrame& frame, const HElem& x) {
    Slices in = slices_of(x);
    Slices out;
    for (const auto& [key, v] : in) {
        SparseVec s;
        for (const auto& [j, c] : v) axpy(s, c, frame.reps[j]);
        if (!s.empty()) out[key] = s;
    }
    return element_of(out, frame.module_basis, x.ring);
}

namespace {

HElem weight_shift(const VhsFrame& frame, const HElem& x, int sign) {
    HElem r(x.basis, x.ring);
    for (const auto& [j, s] : x.c) {
        const int k = sign * frame.weight[j];
        r.add(j, s.map_coefficients([k](const Mono&, const HbarLaurent& c) { return c.shifted(k); }));
    }
    return r;
}

} // namespace

HElem l_hbar(const VhsFrame& frame, const HElem& x) { return weight_shift(frame, x, 1); }
HElem l_hbar_inverse(const VhsFrame& frame, const HElem& x) { return weight_shift(frame, x, -1); }

std::vector<int> hodge_classes(const VhsFrame& frame, int s) {
    std::vector<int> r;
    for (std::size_t j = 0; j < frame.dim(); ++j) {
        const int h = frame.hodge(static_cast<int>(j));
        if (h >= s && ((h - s) % 2 + 2) % 2 == 0) r.push_back(static_cast<int>(j));
    }
    return r;
}

std::vector<SparseVec> OppositeFiltration::at(const VhsFrame& frame, int s) const {
    if (s < lo) return {};
    if (s > hi) {
        std::vector<SparseVec> all;
        for (std::size_t j = 0; j < frame.dim(); ++j)
            if (((frame.hodge(static_cast<int>(j)) - s) % 2 + 2) % 2 == 0) all.push_back(unit_vector(static_cast<int>(j)));
        return all;
    }
    auto it = spans.find(s);
    return it == spans.end() ? std::vector<SparseVec>{} : it->second;
}

namespace {

std::pair<int, int> hodge_range(const VhsFrame& frame) {
    int lo = frame.hodge(0), hi = lo;
    for (std::size_t j = 1; j < frame.dim(); ++j) {
        lo = std::min(lo, frame.hodge(static_cast<int>(j)));
        hi = std::max(hi, frame.hodge(static_cast<int>(j)));
    }
    return {lo, hi};
}

} // namespace

OppositeFiltration default_opposite(const VhsFrame& frame) {
    auto [lo, hi] = hodge_range(frame);
    OppositeFiltration w;
    w.lo = lo;
    w.hi = hi + 2;
    for (int s = w.lo; s <= w.hi; ++s) {
        std::vector<SparseVec> span;
        for (std::size_t j = 0; j < frame.dim(); ++j) {
            const int h = frame.hodge(static_cast<int>(j));
            if (h <= s - 2 && ((h - s) % 2 + 2) % 2 == 0) span.push_back(unit_vector(static_cast<int>(j)));
        }
        w.spans[s] = span;
    }
    return w;
}

OppositeFiltration hodge_as_filtration(const VhsFrame& frame) {
    auto [lo, hi] = hodge_range(frame);
    OppositeFiltration w;
    w.lo = lo - 2;
    w.hi = hi + 2;
    for (int s = w.lo; s <= w.hi; ++s) {
        std::vector<SparseVec> span;
        for (int j : hodge_classes(frame, s)) span.push_back(unit_vector(j));
        w.spans[s] = span;
    }
    return w;
}

std::string format_r(int s) {
    if (s % 2 == 0) return std::to_string(s / 2);
    return std::to_string(s) + "/2";
}

void validate_filtration(const VhsFrame& frame, OppositeFiltration& w) {
    const std::size_t dim = frame.dim();
    auto parity_ok = [&](int j, int s) { return ((frame.hodge(j) - s) % 2 + 2) % 2 == 0; };
    w.complementary = false;
    w.isotropic = false;
    for (int s = w.lo - 2; s <= w.hi + 2; ++s) {
        const auto W = w.at(frame, s);
        for (const auto& v : W)
            for (const auto& [j, c] : v)
                if (!parity_ok(j, s))
                    throw ValidationError("vhs", "W at r = " + format_r(s) + " contains a class of the wrong parity");
        std::size_t total = 0;
        for (std::size_t j = 0; j < dim; ++j)
            if (parity_ok(static_cast<int>(j), s)) ++total;
        std::vector<SparseVec> both;
        for (int j : hodge_classes(frame, s)) both.push_back(unit_vector(j));
        const std::size_t f = both.size();
        const std::size_t rw = span_rank(W, dim);
        both.insert(both.end(), W.begin(), W.end());
        if (f + rw != total || span_rank(both, dim) != total)
            throw ValidationError("vhs", "filtration is not complementary to the Hodge filtration at r = " + format_r(s));
        for (const auto& v : w.at(frame, s - 2))
            if (!in_span(W, v, dim))
                throw ValidationError("vhs", "filtration is not increasing at r = " + format_r(s));
    }
    w.complementary = true;
    if (!frame.gram) return;
    const Matrix& G = *frame.gram;
    bool iso = true;
    for (int s = w.lo - 2; s <= w.hi + 2 && iso; ++s)
        for (const auto& u : w.at(frame, s))
            for (const auto& v : w.at(frame, 2 - s)) {
                Scalar p;
                for (const auto& [i, a] : u)
                    for (const auto& [j, b] : v) p += a * b * G(i, j);
                if (!p.is_zero()) iso = false;
            }
    w.isotropic = iso;
}

HSeries hbar_pairing(const VhsFrame& frame, const HElem& u, const HElem& v) {
    if (!frame.gram) throw ConfigurationError("vhs", "model has no pairing");
    return apply_pairing(*frame.gram, frame.classes, u, v);
}

Report verify_filtration_pairing(const VhsFrame& frame, const OppositeFiltration& w, Window window) {
    Report r("filtration");
    const std::size_t dim = frame.dim();
    std::string split;
    for (int m = window.lo; m <= window.hi && split.empty(); ++m) {
        const int s = frame.n - m;
        std::size_t total = 0;
        for (std::size_t j = 0; j < dim; ++j)
            if (((frame.hodge(static_cast<int>(j)) - s) % 2 + 2) % 2 == 0) ++total;
        std::vector<SparseVec> both;
        for (int j : hodge_classes(frame, s)) both.push_back(unit_vector(j));
        const auto W = w.at(frame, s);
        const std::size_t f = both.size();
        both.insert(both.end(), W.begin(), W.end());
        if (f + span_rank(W, dim) != total || span_rank(both, dim) != total) split = "nu^" + std::to_string(m);
    }
    r.add("L0 + LW = everything", split.empty(), split);
    if (!frame.gram) return r;
    const Matrix& G = *frame.gram;
    std::string bad;
    for (int s = w.lo - 2; s <= w.hi + 2 && bad.empty(); ++s)
        for (int t = w.lo - 2; t <= w.hi + 2 && bad.empty(); ++t)
            for (const auto& u : w.at(frame, s))
                for (const auto& v : w.at(frame, t)) {
                    Scalar p;
                    for (const auto& [i, a] : u)
                        for (const auto& [j, b] : v) p += a * b * G(i, j);
                    if (!p.is_zero() && 2 * frame.n - s - t > 2 * frame.n - 4)
                        bad = "r = " + format_r(s) + ", " + format_r(t);
                }
    r.add("(LW, LW) in hbar^(n-2) C[[1/hbar]]", bad.empty(), bad);
    return r;
}

} // namespace sivhs
