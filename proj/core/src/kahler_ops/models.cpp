#include <algorithm>
#include <bit>

#include "sivhs/errors.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

namespace {

// Exterior monomials in the order used by the dGBV exterior fixtures.
std::vector<std::uint32_t> invariant_masks(int n) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << (2 * n)); ++m) masks.push_back(m);
    auto bits = [n](std::uint32_t m) {
        std::vector<int> v(2 * n);
        for (int i = 0; i < 2 * n; ++i) v[i] = m >> i & 1u;
        return v;
    };
    std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        return bits(a) > bits(b);
    });
    return masks;
}

void require_positive_definite(const Matrix& g) {
    const std::size_t n = g.rows();
    if (g.cols() != n || n == 0) throw ArgumentError("kahler_ops", "metric must be a nonempty square matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g(i, j) != g(j, i)) throw ArgumentError("kahler_ops", "metric must be symmetric");
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
        if (determinant(minor).sign() <= 0) throw ArgumentError("kahler_ops", "metric must be positive definite");
    }
}

struct SideSpec {
    BasisPtr basis;
    std::vector<std::uint32_t> masks;
    std::map<std::uint32_t, int> index;
    SectionModel model;
};

SideSpec make_side(int n, bool forms, int hol_sign) {
    SideSpec s;
    s.masks = invariant_masks(n);
    s.model = forms ? SectionModel::Form : SectionModel::Polyvector;
    std::vector<std::string> names;
    std::vector<Bidegree> degs;
    for (std::size_t i = 0; i < s.masks.size(); ++i) {
        const auto m = s.masks[i];
        s.index[m] = static_cast<int>(i);
        names.push_back(invariant_label(n, m, forms));
        const int p = std::popcount(m & ((1u << n) - 1u));
        const int q = std::popcount(m >> n);
        degs.push_back({hol_sign * p, q});
    }
    s.basis = make_basis(names, degs);
    return s;
}

constexpr int kBound = 4;

PolySection lift(const SideSpec& s, int n, int idx) {
    return PolySection::odd_monomial(n, s.model, kBound, s.masks[idx]);
}

SparseVec lower(const SideSpec& s, const PolySection& x) {
    SparseVec v;
    for (const auto& [k, c] : x.terms()) {
        for (auto e : k.exps)
            if (e) throw InvariantViolation("kahler_ops", "operator left the invariant sector");
        axpy(v, c, unit_vector(s.index.at(k.odd)));
    }
    return v;
}

LinearOp op_matrix(const SideSpec& s, int n, Bidegree shift, int parity,
                   const std::function<PolySection(const PolySection&)>& f) {
    LinearOp op(s.basis, s.basis, shift, parity);
    for (int i = 0; i < static_cast<int>(s.masks.size()); ++i) op.set_column(i, lower(s, f(lift(s, n, i))));
    return op;
}

Bilinear bilinear_table(const SideSpec& left, const SideSpec& right, const SideSpec& out, int n, Bidegree shift,
                        int parity, const std::function<PolySection(const PolySection&, const PolySection&)>& f) {
    Bilinear b(left.basis, right.basis, out.basis, shift, parity);
    for (int i = 0; i < static_cast<int>(left.masks.size()); ++i)
        for (int j = 0; j < static_cast<int>(right.masks.size()); ++j)
            b.set(i, j, lower(out, f(lift(left, n, i), lift(right, n, j))));
    return b;
}

Matrix top_pairing(const SideSpec& m, int n, const Scalar& scale) {
    const std::size_t dim = m.masks.size();
    const std::uint32_t top = (1u << (2 * n)) - 1u;
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const PolySection prod = lift(m, n, static_cast<int>(i)) * lift(m, n, static_cast<int>(j));
            for (const auto& [k, c] : prod.terms())
                if (k.odd == top) g(i, j) = c * scale;
        }
    return g;
}

PolySection derived(const std::function<PolySection(const PolySection&)>& D, const PolySection& a, const PolySection& b) {
    const int pa = a.parity();
    return D(a * b).scaled(sign_of(pa)) - (D(a) * b).scaled(sign_of(pa)) - a * D(b);
}

} // namespace

std::string invariant_label(int n, std::uint32_t mask, bool forms) {
    std::string s;
    for (int i = 0; i < 2 * n; ++i) {
        if (!(mask >> i & 1u)) continue;
        if (!s.empty()) s += "*";
        s += (i < n ? (forms ? "dz" : "psi") : (forms ? "dzb" : "psib")) + std::to_string(i % n + 1);
    }
    return s.empty() ? "1" : s;
}

std::uint32_t invariant_mask(const GradedBasis& basis, int index) {
    const std::string& name = basis.name(index);
    if (name == "1") return 0;
    std::uint32_t mask = 0;
    std::size_t pos = 0;
    int n = 0;
    for (const auto& nm : basis.names())
        if (nm.find('*') == std::string::npos && nm != "1") ++n;
    n /= 2;
    while (pos <= name.size()) {
        const std::size_t next = std::min(name.find('*', pos), name.size());
        const std::string tok = name.substr(pos, next - pos);
        const std::size_t digit = tok.find_first_of("0123456789");
        if (digit == std::string::npos) throw ParseError("kahler_ops", "bad invariant label '" + name + "'");
        const std::string head = tok.substr(0, digit);
        const int i = std::stoi(tok.substr(digit)) - 1;
        const bool anti = head == "psib" || head == "dzb";
        mask |= 1u << (anti ? n + i : i);
        pos = next + 1;
    }
    return mask;
}

ModelPair build_model_A(int n, const Matrix& metric) {
    require_positive_definite(metric);
    if (static_cast<int>(metric.rows()) != n) throw ArgumentError("kahler_ops", "metric size differs from n");
    auto inv = inverse(metric);
    KahlerData K = constant_kahler(*inv, kBound);
    const auto ops = build_operators(K);
    const SideSpec g = make_side(n, true, -1);
    const SideSpec m = make_side(n, false, 1);

    ModelPair p;
    p.name = "model-A-n" + std::to_string(n);
    p.kind = "A";
    p.n = n;
    p.g.basis = g.basis;
    p.g.bracket = bilinear_table(g, g, g, n, {1, 0}, 1,
                                 [&](const PolySection& a, const PolySection& b) { return bracket_omega(K, a, b); });
    p.g.d = op_matrix(g, n, {0, 1}, 1, [](const PolySection& a) { return dbar_form(a); });
    p.g.unit = 0;
    p.m.basis = m.basis;
    p.m.bullet = bilinear_table(g, m, m, n, {1, 0}, 1, [&](const PolySection& k, const PolySection& a) {
        return op_bracket(i_kappa(k), ops.Q)(a).scaled(-1);
    });
    p.m.circ = bilinear_table(g, m, m, n, {0, 0}, 0,
                              [](const PolySection& k, const PolySection& a) { return i_kappa(k)(a); });
    p.m.d = op_matrix(m, n, {0, 1}, 1, ops.dbar.apply);
    p.m.delta = op_matrix(m, n, {1, 0}, 1, ops.Q.apply);
    p.pairing = top_pairing(m, n, 1);
    p.eta = unit_vector(m.index.at((1u << n) - 1u));
    return p;
}

ModelPair build_model_B(int n, const Matrix& metric) {
    require_positive_definite(metric);
    if (static_cast<int>(metric.rows()) != n) throw ArgumentError("kahler_ops", "metric size differs from n");
    const SideSpec g = make_side(n, false, -1);
    const SideSpec m = make_side(n, true, 1);
    auto dbar = [n](const PolySection& a) {
        PolySection r(n, a.model(), a.degree_bound());
        for (int c = 0; c < n; ++c)
            r = r + PolySection::odd_monomial(n, a.model(), a.degree_bound(), 1u << (n + c)) * a.d_even(n + c);
        return r;
    };
    auto del = [n](const PolySection& a) {
        PolySection r(n, a.model(), a.degree_bound());
        for (int c = 0; c < n; ++c)
            r = r + PolySection::odd_monomial(n, a.model(), a.degree_bound(), 1u << c) * a.d_even(c);
        return r;
    };
    auto divergence = [n](const PolySection& a) {
        PolySection r(n, a.model(), a.degree_bound());
        for (int c = 0; c < n; ++c) r = r + a.d_odd(c).d_even(c);
        return r;
    };
    const SectionOp d_op{del, 1};

    ModelPair p;
    p.name = "model-B-n" + std::to_string(n);
    p.kind = "B";
    p.n = n;
    p.g.basis = g.basis;
    p.g.bracket = bilinear_table(g, g, g, n, {1, 0}, 1,
                                 [&](const PolySection& a, const PolySection& b) { return derived(divergence, a, b); });
    p.g.d = op_matrix(g, n, {0, 1}, 1, dbar);
    p.g.unit = 0;
    p.m.basis = m.basis;
    p.m.bullet = bilinear_table(g, m, m, n, {1, 0}, 1, [&](const PolySection& k, const PolySection& a) {
        return op_bracket(i_kappa(k), d_op)(a);
    });
    p.m.circ = bilinear_table(g, m, m, n, {0, 0}, 0,
                              [](const PolySection& k, const PolySection& a) { return i_kappa(k)(a); });
    p.m.d = op_matrix(m, n, {0, 1}, 1, dbar);
    p.m.delta = op_matrix(m, n, {1, 0}, 1, del);
    p.pairing = top_pairing(m, n, determinant(metric).inverse());
    p.eta = unit_vector(m.index.at((1u << n) - 1u));
    return p;
}

} // namespace sivhs
