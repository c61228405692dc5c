#include <doctest.h>

#include <random>

#include "sivhs/deformation.hpp"
#include "sivhs/kahler.hpp"

using namespace sivhs;

namespace {

void require_all(const Report& r) {
    for (const auto& c : r.checks()) {
        INFO(c.name << " " << c.witness);
        CHECK(c.pass);
    }
}

int rep_index(const MCSolution& sol, const SparseVec& v) {
    for (std::size_t i = 0; i < sol.splitting.dim(); ++i)
        if (sol.splitting.reps[i] == v) return static_cast<int>(i);
    return -1;
}

int find_rep(const DgLieAlgebra& g, const SparseVec& v) {
    auto full = solve_mc(g, 1);
    return rep_index(full, v);
}

SparseVec named(const DgbvAlgebra& alg, const std::string& name) { return unit_vector(alg.basis->index(name)); }

// Random total-odd element whose coefficients have degree 2..order.
SElem random_gauge(const BasisPtr& basis, const RingPtr& ring, std::mt19937_64& rng) {
    SElem x(basis, ring);
    std::vector<Mono> monos;
    const int nv = static_cast<int>(ring->nvars());
    for (int a = 0; a < nv; ++a)
        for (int b = a; b < nv; ++b) {
            Mono m(nv, 0);
            m[a] += 1;
            m[b] += 1;
            int s = mono_product(mono_var(*ring, a), mono_var(*ring, b), *ring, m);
            if (s != 0) monos.push_back(m);
        }
    for (int rep = 0; rep < 4; ++rep) {
        const Mono& m = monos[rng() % monos.size()];
        const int par = mono_parity(m, *ring);
        std::vector<int> candidates;
        for (std::size_t i = 0; i < basis->dim(); ++i)
            if (((basis->parity(static_cast<int>(i)) + par) & 1) == 1) candidates.push_back(static_cast<int>(i));
        if (candidates.empty()) continue;
        const int i = candidates[rng() % candidates.size()];
        x.add(i, SuperSeries::monomial(ring, m, Scalar(static_cast<long>(rng() % 5) - 2)));
    }
    return x;
}

} // namespace

TEST_CASE("abelian torus models give linear solutions") {
    for (int n : {1, 2}) {
        Matrix metric = Matrix::identity(n);
        auto pair = build_model_A(n, metric);
        auto sol = solve_mc(pair.g, 4);
        CHECK(sol.unobstructed());
        CHECK(sol.gamma == sol.linear_part());
        CHECK(mc_residual(pair.g, sol.gamma).is_zero());
        CHECK(sol.ring->nvars() == pair.g.basis->dim());
        REQUIRE(sol.unit_param.has_value());
        CHECK(is_unit_normalized(pair.g, sol));
        CHECK(normalize_unit(pair.g, sol).gamma == sol.gamma);
        require_all(verify_flatness_identities(pair.g, pair.m, sol.gamma, hbar_module));
    }
}

TEST_CASE("residual of a single even generator") {
    auto alg = heisenberg_bv_fixture();
    auto pair = pair_from_dgbv(alg);
    SparseVec v = named(alg, "X1*X2");
    auto ring = make_ring({"t"}, {0}, 3);
    SElem gamma = constant_element<Scalar>(alg.basis, ring, {});
    for (const auto& [i, c] : v) gamma.add(i, SuperSeries::variable(ring, 0).scaled(c));

    SparseVec half = scaled(derived_bracket(alg, v, v), Scalar(1, 2));
    REQUIRE_FALSE(half.empty());
    Mono t2{2};
    SElem expected(alg.basis, ring);
    for (const auto& [i, c] : half) expected.add(i, SuperSeries::monomial(ring, t2, c));
    CHECK(mc_residual(pair.g, gamma) == expected);

    SElem zero(alg.basis, ring);
    CHECK(mc_residual(pair.g, zero).is_zero());
}

TEST_CASE("heisenberg bv obstruction at order two") {
    auto alg = heisenberg_bv_fixture();
    auto pair = pair_from_dgbv(alg);
    auto sol = solve_mc(pair.g, 3);
    REQUIRE_FALSE(sol.unobstructed());
    CHECK(sol.obstructions.front().order == 2);

    const auto& proj = sol.obstructions.front().projection;
    const int nv = static_cast<int>(sol.ring->nvars());
    int nonzero_pairs = 0;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) {
            SparseVec br = sol.splitting.pi.apply(derived_bracket(alg, sol.generators[a], sol.generators[b]));
            Mono m(nv, 0);
            mono_product(mono_var(*sol.ring, a), mono_var(*sol.ring, b), *sol.ring, m);
            SparseVec got;
            for (const auto& [i, s] : proj.c) {
                Scalar c = s.coefficient(m);
                if (!c.is_zero()) got[i] = c;
            }
            if (!br.empty()) ++nonzero_pairs;
            const bool same = got == br || got == scaled(br, Scalar(-1));
            INFO(alg.basis->name(sol.param_rep[a]) << " " << alg.basis->name(sol.param_rep[b]));
            CHECK(same);
        }
    CHECK(nonzero_pairs > 0);
}

TEST_CASE("massey products give a second-order correction") {
    auto alg = heisenberg_product_fixture();
    auto pair = pair_from_dgbv(alg);
    const int i1 = find_rep(pair.g, named(alg, "X1*e1"));
    const int i2 = find_rep(pair.g, named(alg, "X2*e2"));
    REQUIRE(i1 >= 0);
    REQUIRE(i2 >= 0);
    MCOptions opt;
    opt.subset = {i1, i2};
    auto sol = solve_mc(pair.g, 3, opt);
    CHECK(sol.unobstructed());
    CHECK_FALSE(sol.gamma.homogeneous(2).is_zero());
    CHECK(mc_residual(pair.g, sol.gamma).is_zero());
    require_all(verify_flatness_identities(pair.g, pair.m, sol.gamma, hbar_module));
    require_all(verify_conjugation(pair.m, sol.gamma, hbar_module));

    SElem corrupted = sol.gamma;
    const SElem second = sol.gamma.homogeneous(2);
    const auto& [idx, series] = *second.c.begin();
    corrupted.add(idx, -series);
    CHECK_FALSE(mc_residual(pair.g, corrupted).is_zero());
    auto rep = verify_flatness_identities(pair.g, pair.m, corrupted, hbar_module);
    CHECK_FALSE(rep.passed("[nabla_a, D^G] = 0"));
}

TEST_CASE("gauge transformed solutions remain solutions") {
    std::mt19937_64 rng(7);
    SUBCASE("massey family") {
        auto alg = heisenberg_product_fixture();
        auto pair = pair_from_dgbv(alg);
        MCOptions opt;
        opt.subset = {find_rep(pair.g, named(alg, "X1*e1")), find_rep(pair.g, named(alg, "X2*e2")),
                      find_rep(pair.g, named(alg, "X3"))};
        auto sol = solve_mc(pair.g, 3, opt);
        REQUIRE(sol.unobstructed());
        for (int trial = 0; trial < 20; ++trial) {
            SElem x = random_gauge(alg.basis, sol.ring, rng);
            SElem moved = gauge_action(pair.g, sol.gamma, x);
            CHECK(mc_residual(pair.g, moved).is_zero());
        }
    }
    SUBCASE("truncated polynomial sub-family") {
        auto alg = truncated_poly_fixture();
        auto pair = pair_from_dgbv(alg);
        MCOptions opt;
        opt.subset = {find_rep(pair.g, named(alg, "1")), find_rep(pair.g, named(alg, "x"))};
        auto sol = solve_mc(pair.g, 3, opt);
        REQUIRE(sol.unobstructed());
        for (int trial = 0; trial < 20; ++trial) {
            SElem x = random_gauge(alg.basis, sol.ring, rng);
            SElem moved = gauge_action(pair.g, sol.gamma, x);
            CHECK(mc_residual(pair.g, moved).is_zero());
        }
    }
}

TEST_CASE("normalize unit after a gauge shift") {
    auto alg = truncated_poly_fixture();
    auto pair = pair_from_dgbv(alg);
    MCOptions opt;
    opt.subset = {find_rep(pair.g, named(alg, "x")), find_rep(pair.g, named(alg, "1"))};
    auto sol = solve_mc(pair.g, 3, opt);
    REQUIRE(sol.unit_param == 0);
    CHECK(is_unit_normalized(pair.g, sol));

    SElem x(alg.basis, sol.ring);
    Mono m{1, 1};
    x.add(alg.basis->index("psi"), SuperSeries::monomial(sol.ring, m, 1));
    MCSolution shifted = sol;
    shifted.gamma = gauge_action(pair.g, sol.gamma, x);
    CHECK(mc_residual(pair.g, shifted.gamma).is_zero());
    CHECK_FALSE(is_unit_normalized(pair.g, shifted));

    auto fixed = normalize_unit(pair.g, shifted);
    CHECK(is_unit_normalized(pair.g, fixed));
    CHECK(mc_residual(pair.g, fixed.gamma).is_zero());
    CHECK(normalize_unit(pair.g, fixed).gamma == fixed.gamma);

    DgLieAlgebra no_unit = pair.g;
    no_unit.unit.reset();
    CHECK_THROWS_AS(normalize_unit(no_unit, solve_mc(no_unit, 2)), ConfigurationError);
}

TEST_CASE("obstruction class does not depend on the splitting") {
    auto alg = heisenberg_product_fixture();
    auto pair = pair_from_dgbv(alg);
    SparseVec a = named(alg, "X1*e1*e3");
    SparseVec a2 = add(a, named(alg, "X1*e1*e2"));
    SparseVec b = named(alg, "X2");

    auto run = [&](const SparseVec& first) {
        MCOptions opt;
        opt.preferred = {first, b};
        auto probe = solve_mc(pair.g, 1, opt);
        opt.subset = {rep_index(probe, first), rep_index(probe, b)};
        REQUIRE(opt.subset[0] >= 0);
        REQUIRE(opt.subset[1] >= 0);
        return solve_mc(pair.g, 2, opt);
    };
    auto s1 = run(a);
    auto s2 = run(a2);
    REQUIRE_FALSE(s1.unobstructed());
    REQUIRE_FALSE(s2.unobstructed());
    CHECK(s1.obstructions.front().order == 2);
    CHECK(s2.obstructions.front().order == 2);

    Mono m{1, 1};
    auto classes = [&](const MCSolution& s) {
        SparseVec v;
        for (const auto& [i, c] : s.obstructions.front().projection.c) v[i] = c.coefficient(m);
        return s1.splitting.class_of(v);
    };
    CHECK(classes(s1) == classes(s2));
}

TEST_CASE("transport and conjugation") {
    SUBCASE("elliptic curve dgbv pair") {
        auto pair = pair_from_dgbv(elliptic_curve());
        auto sol = solve_mc(pair.g, 3, {.weight = 1});
        require_all(verify_conjugation(pair.m, sol.gamma, hbar_module));
    }
    SUBCASE("invariant model of the elliptic curve") {
        auto pair = build_model_A(1, Matrix::identity(1));
        auto sol = solve_mc(pair.g, 3, {.weight = 1});
        require_all(verify_conjugation(pair.m, sol.gamma, hbar_module));

        HElem a = constant_element<HbarLaurent>(pair.m.basis, sol.ring, unit_vector(0));
        SElem zero(pair.g.basis, sol.ring);
        CHECK(transport(pair.m, zero, a, -2) == a);
        HElem t = transport(pair.m, sol.gamma, a, -2);
        HElem first = a - circ_apply(pair.m, sol.gamma, a, -2);
        CHECK(t.truncated(1) == first.truncated(1));
        HElem back = exp_circ(pair.m, sol.gamma, t, -2, 1);
        CHECK(back == a);
    }
    SUBCASE("window overflow") {
        auto pair = build_model_A(1, Matrix::identity(1));
        MCOptions opt;
        opt.window = Window{-1, 1};
        auto sol = solve_mc(pair.g, 3, opt);
        HElem a = constant_element<HbarLaurent>(pair.m.basis, sol.ring, unit_vector(pair.m.basis->dim() - 1));
        CHECK_THROWS_AS(transport(pair.m, sol.gamma, a, -2), WindowOverflow);
    }
}

TEST_CASE("flatness with vanishing gamma") {
    auto pair = pair_from_dgbv(heisenberg_bv_fixture());
    auto ring = make_ring({"t"}, {0}, 3);
    SElem zero(pair.g.basis, ring);
    require_all(verify_flatness_identities(pair.g, pair.m, zero, hbar_module));
}
