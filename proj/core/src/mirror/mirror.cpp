#include "sivhs/mirror.hpp"

#include <bit>
#include <cstdint>
#include <map>

#include "sivhs/errors.hpp"
#include "sivhs/kahler.hpp"

namespace sivhs {

namespace {

using Form = std::map<std::uint32_t, Scalar>;

Form wedge(const Form& x, const Form& y) {
    Form r;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            if (a & b) continue;
            int swaps = 0;
            for (std::uint32_t rest = a; rest; rest &= rest - 1) {
                const int i = std::countr_zero(rest);
                swaps += std::popcount(b & ((1u << i) - 1u));
            }
            const Scalar c = swaps % 2 ? -(ca * cb) : ca * cb;
            r[a | b] += c;
            if (r[a | b].is_zero()) r.erase(a | b);
        }
    return r;
}

// Algebra map between exterior algebras on 2n generators given by generator images.
LinearOp exterior_map(const BasisPtr& src, const BasisPtr& dst, const std::vector<Form>& images) {
    std::map<std::uint32_t, int> dst_index;
    for (std::size_t i = 0; i < dst->dim(); ++i) dst_index[invariant_mask(*dst, static_cast<int>(i))] = static_cast<int>(i);
    LinearOp op(src, dst, {0, 0}, 0);
    for (std::size_t i = 0; i < src->dim(); ++i) {
        const std::uint32_t mask = invariant_mask(*src, static_cast<int>(i));
        Form img{{0u, Scalar(1)}};
        for (std::uint32_t rest = mask; rest; rest &= rest - 1) img = wedge(img, images[std::countr_zero(rest)]);
        SparseVec v;
        for (const auto& [m, c] : img) v[dst_index.at(m)] = c;
        op.set_column(static_cast<int>(i), v);
    }
    return op;
}

// hol_i -> hol_i, anti_i -> sum_j h^{ij} anti_j.
std::vector<Form> generator_images(int n, const Matrix& h) {
    std::vector<Form> images(2 * n);
    for (int i = 0; i < n; ++i) {
        images[i][1u << i] = Scalar(1);
        for (int j = 0; j < n; ++j)
            if (!h(i, j).is_zero()) images[n + i][1u << (n + j)] = h(i, j);
    }
    return images;
}

SparseVec basis_vec(int i) { return unit_vector(i); }

std::string vec_str(const SparseVec& v, const BasisPtr& b) { return format_vec(v, *b); }

} // namespace

FlatTorusPair make_flat_torus_pair(const Matrix& g) {
    if (g.rows() != g.cols() || g.rows() == 0) throw ArgumentError("mirror", "metric must be a nonempty square matrix");
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (g(i, j) != g(j, i)) throw ArgumentError("mirror", "metric must be symmetric");
    auto inv = inverse(g);
    if (!inv) throw ArgumentError("mirror", "metric must be invertible");
    FlatTorusPair t{static_cast<int>(g.rows()), g, *inv};
    if (!(t.g * t.g_inv == Matrix::identity(g.rows()))) throw InvariantViolation("mirror", "g g^{-1} != 1");
    return t;
}

FlatTorusPair dual(const FlatTorusPair& t) { return FlatTorusPair{t.n, t.g_inv, t.g}; }

MirrorMap mirror_map(const FlatTorusPair& t, const MirrorOptions& options) {
    MirrorMap m;
    m.torus = t;
    m.x = build_model_A(t.n, t.g);
    m.x_hat = build_model_B(t.n, t.g_inv);
    const Matrix one = Matrix::identity(t.n);
    m.phi_m = exterior_map(m.x.m.basis, m.x_hat.m.basis, generator_images(t.n, options.drop_metric ? one : t.g_inv));
    m.phi_g = exterior_map(m.x.g.basis, m.x_hat.g.basis, generator_images(t.n, t.g_inv));
    return m;
}

SparseVec phi_map(const MirrorMap& map, const SparseVec& v) {
    for (const auto& [i, c] : v)
        if (i < 0 || static_cast<std::size_t>(i) >= map.x.m.basis->dim())
            throw DomainError("mirror", "vector leaves the invariant sector");
    return map.phi_m.apply(v);
}

Report verify_intertwining(const MirrorMap& map) {
    Report r("intertwining");
    const auto& X = map.x;
    const auto& Y = map.x_hat;
    const std::size_t dm = X.m.basis->dim();
    const std::size_t dg = X.g.basis->dim();

    auto matrix_of = [](const LinearOp& op, std::size_t rows, std::size_t cols) {
        std::vector<SparseVec> c;
        for (std::size_t j = 0; j < cols; ++j) c.push_back(op.column(static_cast<int>(j)));
        return Matrix::from_columns(c, rows);
    };
    const bool bij = rank(matrix_of(map.phi_m, Y.m.basis->dim(), dm)) == dm && Y.m.basis->dim() == dm &&
                     rank(matrix_of(map.phi_g, Y.g.basis->dim(), dg)) == dg && Y.g.basis->dim() == dg;
    r.add("phi bijective", bij);

    bool unit = X.g.unit && Y.g.unit && map.phi_g.apply(basis_vec(*X.g.unit)) == basis_vec(*Y.g.unit);
    r.add("phi(unit) = unit", unit);

    std::string w;
    for (std::size_t i = 0; i < dm && w.empty(); ++i) {
        const SparseVec e = basis_vec(static_cast<int>(i));
        if (map.phi_m.apply(X.m.d.apply(e)) != Y.m.d.apply(map.phi_m.apply(e))) w = "d on " + X.m.basis->name(i);
        else if (map.phi_m.apply(X.m.delta.apply(e)) != Y.m.delta.apply(map.phi_m.apply(e)))
            w = "Delta on " + X.m.basis->name(i);
    }
    for (std::size_t i = 0; i < dg && w.empty(); ++i) {
        const SparseVec e = basis_vec(static_cast<int>(i));
        if (map.phi_g.apply(X.g.d.apply(e)) != Y.g.d.apply(map.phi_g.apply(e))) w = "d on " + X.g.basis->name(i);
    }
    r.add("phi intertwines the differentials", w.empty(), w);

    w.clear();
    for (std::size_t a = 0; a < dg && w.empty(); ++a)
        for (std::size_t b = 0; b < dg && w.empty(); ++b) {
            const SparseVec ea = basis_vec(static_cast<int>(a)), eb = basis_vec(static_cast<int>(b));
            const SparseVec lhs = map.phi_g.apply(X.g.bracket.apply(ea, eb));
            const SparseVec rhs = Y.g.bracket.apply(map.phi_g.apply(ea), map.phi_g.apply(eb));
            if (lhs != rhs) w = X.g.basis->name(a) + ", " + X.g.basis->name(b);
        }
    r.add("phi([a, b]) = [phi a, phi b]", w.empty(), w);

    std::string wc, wb;
    for (std::size_t a = 0; a < dg; ++a)
        for (std::size_t i = 0; i < dm; ++i) {
            const SparseVec ea = basis_vec(static_cast<int>(a)), ei = basis_vec(static_cast<int>(i));
            const SparseVec ga = map.phi_g.apply(ea), mi = map.phi_m.apply(ei);
            if (wc.empty() && map.phi_m.apply(X.m.circ.apply(ea, ei)) != Y.m.circ.apply(ga, mi))
                wc = X.g.basis->name(a) + " o " + X.m.basis->name(i) + ": " +
                     vec_str(map.phi_m.apply(X.m.circ.apply(ea, ei)), Y.m.basis) + " vs " +
                     vec_str(Y.m.circ.apply(ga, mi), Y.m.basis);
            if (wb.empty() && map.phi_m.apply(X.m.bullet.apply(ea, ei)) != Y.m.bullet.apply(ga, mi))
                wb = X.g.basis->name(a) + " . " + X.m.basis->name(i);
        }
    r.add("phi(a o x) = phi(a) o phi(x)", wc.empty(), wc);
    r.add("phi(a . x) = phi(a) . phi(x)", wb.empty(), wb);

    w.clear();
    if (!X.pairing || !Y.pairing) {
        w = "missing pairing";
    } else {
        for (std::size_t i = 0; i < dm && w.empty(); ++i)
            for (std::size_t j = 0; j < dm && w.empty(); ++j) {
                const SparseVec u = map.phi_m.apply(basis_vec(static_cast<int>(i)));
                const SparseVec v = map.phi_m.apply(basis_vec(static_cast<int>(j)));
                Scalar s;
                for (const auto& [k, a] : u)
                    for (const auto& [l, b] : v) s += a * b * (*Y.pairing)(k, l);
                if (s != (*X.pairing)(i, j)) w = X.m.basis->name(i) + ", " + X.m.basis->name(j);
            }
    }
    r.add("phi is an isometry", w.empty(), w);
    r.add("phi(eta) = eta^", X.eta && Y.eta && map.phi_m.apply(*X.eta) == *Y.eta);
    return r;
}

MirrorRun run_mirror(const FlatTorusPair& t, int order, const std::optional<OppositeFiltration>& w) {
    MirrorRun run;
    const MirrorMap map = mirror_map(t);
    run.report = Report("mirror");
    run.report.merge(verify_intertwining(map));

    MirrorSide& A = run.a;
    A.pair = map.x;
    A.sol = solve_mc(A.pair.g, order);
    A.frame = make_frame(A.pair);
    const OppositeFiltration W = w ? *w : default_opposite(A.frame);
    A.period = period_map(A.pair, A.sol, A.frame, W, *A.pair.eta);
    A.frob = frobenius(A.pair, A.sol, A.period);

    MirrorSide& B = run.b;
    B.pair = map.x_hat;
    std::vector<SparseVec> images;
    for (const auto& gen : A.sol.generators) images.push_back(map.phi_g.apply(gen));
    MCOptions opt;
    for (const auto& v : images)
        if (!B.pair.g.unit || v != unit_vector(*B.pair.g.unit)) opt.preferred.push_back(v);
    const MCSolution probe = solve_mc(B.pair.g, 1, opt);
    for (const auto& v : images) {
        int found = -1;
        for (std::size_t i = 0; i < probe.splitting.dim(); ++i)
            if (probe.splitting.reps[i] == v) found = static_cast<int>(i);
        if (found < 0) throw InvariantViolation("mirror", "phi image " + format_vec(v, *B.pair.g.basis) + " is not a representative");
        opt.subset.push_back(found);
    }
    B.sol = solve_mc(B.pair.g, order, opt);
    run.report.add("coordinates correspond", B.sol.generators == images);

    std::vector<SparseVec> reps;
    for (const auto& v : A.frame.reps) reps.push_back(map.phi_m.apply(v));
    B.frame = make_frame(B.pair, reps);
    B.period = period_map(B.pair, B.sol, B.frame, W, map.phi_m.apply(*A.pair.eta));
    B.frob = frobenius(B.pair, B.sol, B.period);

    run.report.add("A-side Frobenius identities", verify_frobenius(A.frob).all_pass());
    run.report.add("B-side Frobenius identities", verify_frobenius(B.frob).all_pass());
    run.report.add("Psi_A = Psi_B", A.period.psi_flat == B.period.psi_flat);

    std::string diff;
    for (std::size_t a = 0; a < A.frob.dim() && diff.empty(); ++a)
        for (std::size_t b = 0; b < A.frob.dim() && diff.empty(); ++b)
            for (std::size_t c = 0; c < A.frob.dim() && diff.empty(); ++c)
                if (!(A.frob.A[a][b][c] == B.frob.A[a][b][c]))
                    diff = "A^" + std::to_string(c) + "_" + std::to_string(a) + std::to_string(b) + ": " +
                           A.frob.A[a][b][c].str() + " vs " + B.frob.A[a][b][c].str();
    run.report.add("A^c_ab(X) = A^c_ab(X^)", diff.empty(), diff);
    diff.clear();
    for (std::size_t a = 0; a < A.frob.dim() && diff.empty(); ++a)
        for (std::size_t b = 0; b < A.frob.dim() && diff.empty(); ++b)
            if (A.frob.g(a, b) != B.frob.g(a, b))
                diff = "g_" + std::to_string(a) + std::to_string(b) + ": " + A.frob.g(a, b).str() + " vs " +
                       B.frob.g(a, b).str();
    run.report.add("g(X) = g(X^)", diff.empty(), diff);
    run.report.add("Phi(X) = Phi(X^)", A.frob.potential == B.frob.potential,
                   A.frob.potential == B.frob.potential ? "" : A.frob.potential.str() + " vs " + B.frob.potential.str());
    return run;
}

Report verify_mirror_theorem(const FlatTorusPair& t, int order, const std::optional<OppositeFiltration>& w) {
    return run_mirror(t, order, w).report;
}

Report verify_mirror_both_roles(const FlatTorusPair& t, int order) {
    Report r("mirror");
    r.merge(verify_mirror_theorem(t, order), "A(X) = B(X^): ");
    r.merge(verify_mirror_theorem(dual(t), order), "A(X^) = B(X): ");
    return r;
}

} // namespace sivhs
