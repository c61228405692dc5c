#include "sivhs/dgbv.hpp"

#include "sivhs/errors.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

namespace {

int par(const BasisPtr& b, int i) { return b->parity(i); }

std::string tuple_name(const BasisPtr& b, std::initializer_list<int> idx) {
    std::string s;
    for (int i : idx) s += (s.empty() ? "" : ", ") + b->name(i);
    return "(" + s + ")";
}

void require_same(const BasisPtr& a, const BasisPtr& b) {
    if (a != b && a->names() != b->names()) throw StructuralError("dgbv", "elements over different bases");
}

} // namespace

GradedElement mul(const GradedElement& a, const GradedElement& b, const Bilinear& product) {
    require_same(a.basis, b.basis);
    require_same(a.basis, product.left());
    return {product.out(), product.apply(a.coeffs, b.coeffs)};
}

SparseVec mul(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b) {
    return alg.product.apply(a, b);
}

LinearOp left_multiplication(const DgbvAlgebra& alg, int a) {
    LinearOp l(alg.basis, alg.basis, alg.basis->bidegree(a), par(alg.basis, a));
    for (std::size_t j = 0; j < alg.basis->dim(); ++j) l.set_column(static_cast<int>(j), alg.product.at(a, static_cast<int>(j)));
    return l;
}

SparseVec derived_bracket(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b) {
    SparseVec r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            const SparseVec ei = unit_vector(i), ej = unit_vector(j);
            const int s = sign_of(par(alg.basis, i));
            SparseVec t = scaled(alg.delta.apply(mul(alg, ei, ej)), s);
            axpy(t, -s, mul(alg, alg.delta.apply(ei), ej));
            axpy(t, -1, mul(alg, ei, alg.delta.apply(ej)));
            axpy(r, x * y, t);
        }
    return r;
}

Bilinear derived_bracket_table(const DgbvAlgebra& alg) {
    Bilinear b(alg.basis, alg.basis, alg.basis, alg.delta.shift(), 1);
    for (std::size_t i = 0; i < alg.basis->dim(); ++i)
        for (std::size_t j = 0; j < alg.basis->dim(); ++j)
            b.set(static_cast<int>(i), static_cast<int>(j),
                  derived_bracket(alg, unit_vector(static_cast<int>(i)), unit_vector(static_cast<int>(j))));
    return b;
}

SparseVec bullet_action(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b) {
    SparseVec r;
    for (const auto& [i, x] : a) {
        LinearOp comm = op_commutator(left_multiplication(alg, i), alg.delta);
        axpy(r, -x, comm.apply(b));
    }
    return r;
}

Bilinear bullet_table(const DgbvAlgebra& alg) {
    Bilinear b(alg.basis, alg.basis, alg.basis, alg.delta.shift(), 1);
    for (std::size_t i = 0; i < alg.basis->dim(); ++i) {
        LinearOp comm = op_commutator(left_multiplication(alg, static_cast<int>(i)), alg.delta);
        for (std::size_t j = 0; j < alg.basis->dim(); ++j)
            b.set(static_cast<int>(i), static_cast<int>(j), scaled(comm.column(static_cast<int>(j)), -1));
    }
    return b;
}

Report check_dgbv_axioms(const DgbvAlgebra& alg) {
    Report rep("dgbv axioms: " + alg.name);
    const auto& B = alg.basis;
    const int dim = static_cast<int>(B->dim());
    auto e = [](int i) { return unit_vector(i); };
    auto m = [&](const SparseVec& x, const SparseVec& y) { return mul(alg, x, y); };
    const auto& d = alg.d;
    const auto& D = alg.delta;

    {
        auto v = alg.product.shift_violation();
        bool ok = alg.product.shift() == Bidegree{0, 0} && !v;
        rep.add("product-bidegree", ok, v ? tuple_name(B, {v->first, v->second}) : "declared shift not (0,0)");
    }
    {
        auto v = d.shift_violation();
        bool ok = d.shift() == Bidegree{0, 1} && !v;
        rep.add("d-bidegree", ok, v ? "entry " + tuple_name(B, {v->first, v->second}) : "declared shift not (0,1)");
    }
    {
        auto v = D.shift_violation();
        bool ok = D.shift() == Bidegree{-1, 0} && !v;
        rep.add("delta-bidegree", ok, v ? "entry " + tuple_name(B, {v->first, v->second}) : "declared shift not (-1,0)");
    }
    if (!rep.all_pass()) return rep;

    std::string w;
    auto first_fail = [&](bool cond, std::string witness) {
        if (!cond && w.empty()) w = std::move(witness);
    };

    w.clear();
    for (int b = 0; b < dim; ++b) {
        first_fail(m(e(alg.unit), e(b)) == e(b) && m(e(b), e(alg.unit)) == e(b), tuple_name(B, {b}));
    }
    rep.add("unit", w.empty(), w);

    w.clear();
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            first_fail(m(e(a), e(b)) == scaled(m(e(b), e(a)), sign_of(par(B, a) * par(B, b))), tuple_name(B, {a, b}));
    rep.add("supercommutative", w.empty(), w);

    w.clear();
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            SparseVec ab = m(e(a), e(b));
            for (int c = 0; c < dim && w.empty(); ++c)
                first_fail(m(ab, e(c)) == m(e(a), m(e(b), e(c))), tuple_name(B, {a, b, c}));
        }
    rep.add("associative", w.empty(), w);

    rep.add("d-squared", d.compose(d).is_zero(), "d^2 != 0");
    rep.add("delta-squared", D.compose(D).is_zero(), "Delta^2 != 0");
    rep.add("d-delta-anticommute", op_commutator(d, D).is_zero(), "d Delta + Delta d != 0");
    rep.add("delta-unit", D.apply(e(alg.unit)).empty(), "Delta(1) != 0");

    w.clear();
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            SparseVec lhs = d.apply(m(e(a), e(b)));
            SparseVec rhs = m(d.apply(e(a)), e(b));
            axpy(rhs, sign_of(par(B, a)), m(e(a), d.apply(e(b))));
            first_fail(lhs == rhs, tuple_name(B, {a, b}));
        }
    rep.add("d-derivation", w.empty(), w);

    w.clear();
    for (int a = 0; a < dim && w.empty(); ++a)
        for (int b = 0; b < dim && w.empty(); ++b) {
            const int pa = par(B, a), pb = par(B, b);
            SparseVec ab = m(e(a), e(b));
            for (int c = 0; c < dim && w.empty(); ++c) {
                const int pc = par(B, c);
                SparseVec lhs = D.apply(m(ab, e(c)));
                SparseVec rhs = m(D.apply(ab), e(c));
                axpy(rhs, sign_of(pb * (pa + 1)), m(e(b), D.apply(m(e(a), e(c)))));
                axpy(rhs, sign_of(pa), m(e(a), D.apply(m(e(b), e(c)))));
                axpy(rhs, -1, m(m(D.apply(e(a)), e(b)), e(c)));
                axpy(rhs, -sign_of(pa), m(m(e(a), D.apply(e(b))), e(c)));
                axpy(rhs, -sign_of(pa + pb), m(ab, D.apply(e(c))));
                (void)pc;
                first_fail(lhs == rhs, tuple_name(B, {a, b, c}));
            }
        }
    rep.add("delta-order-two", w.empty(), w);

    if (alg.integral) {
        if (alg.integral->size() != B->dim()) {
            rep.add("integral-shape", false, "integral length differs from dimension");
        } else {
            w.clear();
            std::string w2;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    const int pa = par(B, a);
                    Scalar l1 = pairing_from_integral(alg, d.apply(e(a)), e(b));
                    Scalar r1 = -sign_of(pa + 1) * pairing_from_integral(alg, e(a), d.apply(e(b)));
                    first_fail(l1 == r1, tuple_name(B, {a, b}));
                    Scalar l2 = pairing_from_integral(alg, D.apply(e(a)), e(b));
                    Scalar r2 = sign_of(pa) * pairing_from_integral(alg, e(a), D.apply(e(b)));
                    if (!(l2 == r2) && w2.empty()) w2 = tuple_name(B, {a, b});
                }
            rep.add("integral-d", w.empty(), w);
            rep.add("integral-delta", w2.empty(), w2);
            auto reps = cohomology(alg.d).reps;
            Matrix g(reps.size(), reps.size());
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = 0; j < reps.size(); ++j) g(i, j) = pairing_from_integral(alg, reps[i], reps[j]);
            rep.add("integral-nondegenerate", rank(g) == reps.size(), "pairing on harmonic classes is degenerate");
        }
    }
    return rep;
}

Report check_odd_lie(const Bilinear& br, const LinearOp& d, const Bilinear* product) {
    Report rep("odd Lie axioms");
    const auto& B = br.left();
    const int dim = static_cast<int>(B->dim());
    auto e = [](int i) { return unit_vector(i); };
    auto bk = [&](const SparseVec& x, const SparseVec& y) { return br.apply(x, y); };
    std::string w;
    auto first_fail = [&](bool cond, std::string witness) {
        if (!cond && w.empty()) w = std::move(witness);
    };

    rep.add("differential-squared", d.compose(d).is_zero(), "d^2 != 0");
    rep.add("bracket-odd", br.parity() == 1, "bracket is not odd");

    w.clear();
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            first_fail(bk(e(a), e(b)) == scaled(bk(e(b), e(a)), -sign_of((par(B, a) + 1) * (par(B, b) + 1))),
                       tuple_name(B, {a, b}));
    rep.add("antisymmetry", w.empty(), w);

    w.clear();
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            SparseVec lhs = d.apply(bk(e(a), e(b)));
            SparseVec rhs = bk(d.apply(e(a)), e(b));
            axpy(rhs, -sign_of(par(B, a)), bk(e(a), d.apply(e(b))));
            first_fail(lhs == rhs, tuple_name(B, {a, b}));
        }
    rep.add("leibniz", w.empty(), w);

    w.clear();
    for (int a = 0; a < dim && w.empty(); ++a)
        for (int b = 0; b < dim && w.empty(); ++b) {
            SparseVec ab = bk(e(a), e(b));
            const int s = sign_of((par(B, a) + 1) * (par(B, b) + 1));
            for (int c = 0; c < dim && w.empty(); ++c) {
                SparseVec lhs = bk(e(a), bk(e(b), e(c)));
                SparseVec rhs = bk(ab, e(c));
                axpy(rhs, s, bk(e(b), bk(e(a), e(c))));
                first_fail(lhs == rhs, tuple_name(B, {a, b, c}));
            }
        }
    rep.add("jacobi", w.empty(), w);

    if (product) {
        auto m = [&](const SparseVec& x, const SparseVec& y) { return product->apply(x, y); };
        w.clear();
        for (int a = 0; a < dim && w.empty(); ++a)
            for (int b = 0; b < dim && w.empty(); ++b)
                for (int c = 0; c < dim && w.empty(); ++c) {
                    SparseVec lhs = bk(e(a), m(e(b), e(c)));
                    SparseVec rhs = m(bk(e(a), e(b)), e(c));
                    axpy(rhs, sign_of((par(B, a) + 1) * par(B, b)), m(e(b), bk(e(a), e(c))));
                    first_fail(lhs == rhs, tuple_name(B, {a, b, c}));
                }
        rep.add("odd-poisson", w.empty(), w);
    }
    return rep;
}

namespace {

// Element of m[nu, 1/nu]: nu-power -> vector.
using LVec = std::map<int, SparseVec>;

void acc(LVec& y, const Scalar& a, const LVec& x) {
    for (const auto& [k, v] : x) {
        axpy(y[k], a, v);
        if (y[k].empty()) y.erase(k);
    }
}
LVec at0(const SparseVec& v) {
    LVec r;
    if (!v.empty()) r[0] = v;
    return r;
}
LVec shifted(const SparseVec& v, int k) {
    LVec r;
    if (!v.empty()) r[k] = v;
    return r;
}
bool same(const LVec& a, const LVec& b) {
    LVec diff = a;
    acc(diff, -1, b);
    return diff.empty();
}

} // namespace

Report check_module_axioms(const DgLieAlgebra& g, const DgModule& m, ModuleScaling sc) {
    Report rep("module axioms");
    const auto& G = g.basis;
    const auto& M = m.basis;
    const int dg = static_cast<int>(G->dim()), dm = static_cast<int>(M->dim());

    auto dm_op = [&](const LVec& x) {
        LVec r;
        for (const auto& [k, v] : x) {
            acc(r, 1, shifted(m.d.apply(v), k));
            acc(r, 1, shifted(m.delta.apply(v), k + sc.delta_nu));
        }
        return r;
    };
    auto bullet = [&](const SparseVec& kappa, const LVec& x) {
        LVec r;
        for (const auto& [k, v] : x) acc(r, 1, shifted(m.bullet.apply(kappa, v), k));
        return r;
    };
    auto circ = [&](const SparseVec& kappa, const LVec& x) {
        LVec r;
        for (const auto& [k, v] : x) acc(r, 1, shifted(m.circ.apply(kappa, v), k + sc.circ_nu));
        return r;
    };
    auto bullet_l = [&](const SparseVec& kappa, const LVec& x) { return bullet(kappa, x); };
    auto e = [](int i) { return unit_vector(i); };
    auto gname = [&](int i) { return G->name(i); };
    auto mname = [&](int i) { return M->name(i); };

    std::string w;
    auto first_fail = [&](bool cond, std::string witness) {
        if (!cond && w.empty()) w = std::move(witness);
    };

    w.clear();
    for (int a = 0; a < dm; ++a) first_fail(dm_op(dm_op(at0(e(a)))).empty(), mname(a));
    rep.add("module-differential-squared", w.empty(), w);

    w.clear();
    for (int k = 0; k < dg; ++k)
        for (int a = 0; a < dm; ++a) {
            const int pk = G->parity(k);
            LVec lhs = dm_op(bullet(e(k), at0(e(a))));
            LVec rhs = bullet_l(g.d.apply(e(k)), at0(e(a)));
            acc(rhs, -sign_of(pk), bullet(e(k), dm_op(at0(e(a)))));
            first_fail(same(lhs, rhs), "(" + gname(k) + ", " + mname(a) + ")");
        }
    rep.add("bullet-leibniz", w.empty(), w);

    w.clear();
    for (int k1 = 0; k1 < dg && w.empty(); ++k1)
        for (int k2 = 0; k2 < dg && w.empty(); ++k2) {
            const int s = sign_of((G->parity(k1) + 1) * (G->parity(k2) + 1));
            SparseVec br = g.bracket.apply(e(k1), e(k2));
            for (int a = 0; a < dm && w.empty(); ++a) {
                LVec lhs = bullet(e(k1), bullet(e(k2), at0(e(a))));
                acc(lhs, -s, bullet(e(k2), bullet(e(k1), at0(e(a)))));
                LVec rhs = bullet(br, at0(e(a)));
                first_fail(same(lhs, rhs), "(" + gname(k1) + ", " + gname(k2) + ", " + mname(a) + ")");
            }
        }
    rep.add("lie-module", w.empty(), w);

    w.clear();
    for (int k1 = 0; k1 < dg && w.empty(); ++k1)
        for (int k2 = 0; k2 < dg && w.empty(); ++k2) {
            const int s = sign_of(G->parity(k1) * G->parity(k2));
            for (int a = 0; a < dm && w.empty(); ++a) {
                LVec lhs = circ(e(k1), circ(e(k2), at0(e(a))));
                LVec rhs;
                acc(rhs, s, circ(e(k2), circ(e(k1), at0(e(a)))));
                first_fail(same(lhs, rhs), "(" + gname(k1) + ", " + gname(k2) + ", " + mname(a) + ")");
            }
        }
    rep.add("circ-commute", w.empty(), w);

    w.clear();
    for (int k = 0; k < dg; ++k)
        for (int a = 0; a < dm; ++a) {
            const int s = sign_of(G->parity(k));
            LVec lhs = dm_op(circ(e(k), at0(e(a))));
            LVec rhs = circ(g.d.apply(e(k)), at0(e(a)));
            acc(rhs, s, circ(e(k), dm_op(at0(e(a)))));
            acc(rhs, s, bullet(e(k), at0(e(a))));
            first_fail(same(lhs, rhs), "(" + gname(k) + ", " + mname(a) + ")");
        }
    rep.add("circ-differential", w.empty(), w);

    w.clear();
    for (int k1 = 0; k1 < dg && w.empty(); ++k1)
        for (int k2 = 0; k2 < dg && w.empty(); ++k2) {
            const int p1 = G->parity(k1), p2 = G->parity(k2);
            SparseVec br = g.bracket.apply(e(k1), e(k2));
            for (int a = 0; a < dm && w.empty(); ++a) {
                LVec lhs = circ(e(k1), bullet(e(k2), at0(e(a))));
                acc(lhs, -sign_of(p1 * p2 + p1), bullet(e(k2), circ(e(k1), at0(e(a)))));
                LVec rhs;
                acc(rhs, -sign_of(p2), circ(br, at0(e(a))));
                first_fail(same(lhs, rhs), "(" + gname(k1) + ", " + gname(k2) + ", " + mname(a) + ")");
            }
        }
    rep.add("circ-bullet", w.empty(), w);
    return rep;
}

ModelPair pair_from_dgbv(const DgbvAlgebra& alg) {
    ModelPair p;
    p.name = alg.name;
    p.kind = "dgbv";
    p.n = alg.n;
    p.g = DgLieAlgebra{alg.basis, derived_bracket_table(alg), alg.d, alg.unit};
    p.m = DgModule{alg.basis, bullet_table(alg), alg.product, alg.d, alg.delta};
    if (alg.integral) p.pairing = integral_gram(alg);
    p.eta = alg.calibration;
    return p;
}

Scalar pairing_from_integral(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b) {
    if (!alg.integral) throw ConfigurationError("dgbv", "algebra '" + alg.name + "' has no integral");
    Scalar s;
    for (const auto& [k, v] : mul(alg, a, b)) s += v * (*alg.integral)[k];
    return s;
}

Matrix integral_gram(const DgbvAlgebra& alg) {
    const std::size_t dim = alg.basis->dim();
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = pairing_from_integral(alg, unit_vector(static_cast<int>(i)), unit_vector(static_cast<int>(j)));
    return g;
}

} // namespace sivhs
