#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sivhs/deformation.hpp"
#include "sivhs/dgbv.hpp"
#include "sivhs/errors.hpp"
#include "sivhs/frobenius.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/mirror.hpp"
#include "sivhs/vhs.hpp"
#include "sivhs_cli/run.hpp"

using namespace sivhs;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(const Report& r, const std::string& label) {
        for (const auto& c : r.checks())
            if (!c.pass) {
                pass = false;
                notes.push_back(label + ": " + c.name + (c.witness.empty() ? "" : " [" + c.witness + "]"));
            }
    }
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

Outcome axioms() {
    Outcome o;
    std::vector<DgbvAlgebra> algebras{polyvector_torus(1), polyvector_torus(2), dolbeault_torus(1),
                                      dolbeault_torus(2),  derham_torus(1),     derham_torus(2),
                                      truncated_poly_fixture(), heisenberg_bv_fixture(), heisenberg_ce_fixture()};
    for (const auto& alg : algebras) {
        o.require(check_dgbv_axioms(alg), alg.name);
        o.require(check_odd_lie(derived_bracket_table(alg), alg.d, &alg.product), alg.name);
        auto pair = pair_from_dgbv(alg);
        o.require(check_module_axioms(pair.g, pair.m, hbar_module), alg.name);
    }
    for (int n : {1, 2})
        for (const auto& pair : {build_model_A(n, Matrix::identity(n)), build_model_B(n, Matrix::identity(n))}) {
            o.require(check_odd_lie(pair.g.bracket, pair.g.d), pair.name);
            o.require(check_module_axioms(pair.g, pair.m, hbar_module), pair.name);
        }
    return o;
}

Outcome kahler_identities() {
    Outcome o;
    for (int n : {1, 2}) {
        std::mt19937_64 rng(100 + n);
        std::vector<PolySection> sections, kappas;
        for (int i = 0; i < 100; ++i) {
            sections.push_back(random_section(n, SectionModel::Polyvector, 3, 12, rng));
            PolySection k;
            do {
                k = random_section(n, SectionModel::Form, 2, 12, rng, static_cast<int>(rng() % 2));
            } while (k.is_zero());
            kappas.push_back(k);
        }
        const std::string tag = "n=" + std::to_string(n);
        auto constant = constant_kahler(n == 1 ? mat({{2}}) : mat({{2, 1}, {1, 3}}), 12);
        o.require(verify_kahler_identities(constant, sections, kappas, false), tag + " constant omega");
        auto origin = hessian_kahler(n, 40 + n, 12);
        o.require(verify_kahler_identities(origin, sections, kappas, true), tag + " Kahler-at-origin omega");
        if (n == 2) {
            auto bad = verify_kahler_identities(non_kahler(2, 12), sections, kappas, true);
            o.require(!bad.all_pass(), "non-Kahler omega not detected");
        }
    }
    return o;
}

Outcome maurer_cartan() {
    Outcome o;
    std::mt19937_64 rng(11);
    for (int n : {1, 2})
        for (const auto& pair : {build_model_A(n, Matrix::identity(n)), build_model_B(n, Matrix::identity(n))}) {
            auto sol = solve_mc(pair.g, 4);
            o.require(sol.unobstructed(), pair.name + " obstructed");
            o.require(mc_residual(pair.g, sol.gamma).is_zero(), pair.name + " residual nonzero mod m^5");
            const auto& ring = sol.ring;
            for (int trial = 0; trial < 10; ++trial) {
                SElem x(pair.g.basis, ring);
                for (std::size_t a = 0; a < ring->nvars(); ++a)
                    for (std::size_t b = a; b < ring->nvars(); ++b) {
                        Mono m;
                        if (!mono_product(mono_var(*ring, a), mono_var(*ring, b), *ring, m)) continue;
                        if (rng() % 3) continue;
                        const int par = mono_parity(m, *ring);
                        for (std::size_t i = 0; i < pair.g.basis->dim(); ++i)
                            if (((pair.g.basis->parity(static_cast<int>(i)) + par) & 1) && rng() % 4 == 0)
                                x.add(static_cast<int>(i),
                                      SuperSeries::monomial(ring, m, Scalar(static_cast<long>(rng() % 7) - 3)));
                    }
                o.require(mc_residual(pair.g, gauge_action(pair.g, sol.gamma, x)).is_zero(),
                          pair.name + " gauge-transformed solution fails");
            }
        }
    auto alg = heisenberg_bv_fixture();
    o.require(!check_manin(alg).verdict, "obstruction fixture is Manin");
    auto sol = solve_mc(pair_from_dgbv(alg).g, 3);
    o.require(!sol.unobstructed() && sol.obstructions.front().order == 2, "no obstruction at order 2");
    return o;
}

Outcome period() {
    Outcome o;
    auto pair = build_model_A(1, Matrix::identity(1));
    auto sol = solve_mc(pair.g, 3);
    auto frame = make_frame(pair);
    PeriodMap p = period_map(pair, sol, frame, default_opposite(frame), *pair.eta);
    o.require(p.psi.homogeneous(0) == p.eta, "Psi(0) != eta");
    o.require(p.unit_param.has_value(), "no unit parameter");
    if (p.unit_param)
        o.require(p.psi.derivative(*p.unit_param).truncated(2) == shift_nu(p.psi.truncated(2), -2),
                  "d Psi / d t0 != Psi / hbar mod m^3");
    o.require(p.rank_checks > 0 && p.rank_failures == 0, "uniqueness rank assertion tripped");
    o.require(verify_period_map(p), "period map");
    return o;
}

using Form = std::map<std::uint32_t, Scalar>;

Form wedge(const Form& x, const Form& y) {
    Form r;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            if (a & b) continue;
            int swaps = 0;
            for (int i = 0; i < 32; ++i)
                if (a >> i & 1u) swaps += std::popcount(b & ((1u << i) - 1u));
            Scalar c = ca * cb;
            if (swaps % 2) c = -c;
            r[a | b] += c;
            if (r[a | b].is_zero()) r.erase(a | b);
        }
    return r;
}

Outcome frobenius_suite() {
    Outcome o;
    auto pair = build_model_A(1, Matrix::identity(1));
    auto sol = solve_mc(pair.g, 3);
    auto frame = make_frame(pair);
    auto p = period_map(pair, sol, frame, default_opposite(frame), *pair.eta);
    auto f = frobenius(pair, sol, p);
    o.require(f.extraction, "extraction");
    o.require(verify_frobenius(f), "frobenius");

    std::vector<Form> delta;
    for (const auto& gen : sol.generators) {
        Form form;
        for (const auto& [i, c] : gen) form[invariant_mask(*pair.g.basis, i)] = c;
        delta.push_back(form);
    }
    const auto& ring = f.potential.ring();
    SuperSeries oracle(ring);
    const int dim = static_cast<int>(delta.size());
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c) {
                auto abc = wedge(wedge(delta[a], delta[b]), delta[c]);
                auto it = abc.find(3u);
                if (it == abc.end()) continue;
                oracle += (SuperSeries::variable(ring, c) * SuperSeries::variable(ring, b) * SuperSeries::variable(ring, a))
                              .scaled(it->second * Scalar(1, 6));
            }
    o.require(!oracle.is_zero() && f.potential == oracle, "Phi differs from the cup-product cubic: " + (f.potential - oracle).str());
    return o;
}

Outcome mirror() {
    Outcome o;
    for (const auto& g : {mat({{1}}), mat({{1, 0}, {0, 2}})})
        for (int order : {2, 3}) {
            auto t = make_flat_torus_pair(g);
            o.require(verify_mirror_both_roles(t, order), "n=" + std::to_string(t.n) + " N=" + std::to_string(order));
        }
    return o;
}

Outcome oracles() {
    Outcome o;
    for (const auto& name : cli::builtin_algebras()) {
        auto alg = *cli::builtin_algebra(name);
        o.require(cli::bracket_oracle(alg), name);
        o.require(cli::cohomology_rank_oracle(alg.d, "d"), name);
        o.require(cli::cohomology_rank_oracle(alg.delta, "delta"), name);
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    auto once = [](int& code) {
        const char* argv[] = {"sivhs", "selftest", "--seed", "7", "--cases", "100"};
        std::ostringstream out, err;
        code = cli::main_entry(6, argv, out, err);
        return out.str();
    };
    int c1 = 0, c2 = 0;
    const std::string a = once(c1);
    const std::string b = once(c2);
    o.require(!a.empty() && a == b, "selftest reports differ");
    o.require(c1 == c2, "exit codes differ");
    return o;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double limit;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "axiom suites on the built-in models", 60, axioms},
        {2, "Kahler operator identities on random sections", 120, kahler_identities},
        {3, "Maurer-Cartan residual, obstruction and gauge", 0, maurer_cartan},
        {4, "period map on torus n=1", 0, period},
        {5, "Frobenius manifold on torus n=1, N=3", 60, frobenius_suite},
        {6, "mirror A(X) = B(X^)", 300, mirror},
        {7, "oracle equivalence", 0, oracles},
        {8, "selftest determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out.pass = false;
            out.notes.push_back(std::string("error: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0 && secs > c.limit) out.require(false, "time limit exceeded");
        std::printf("criterion %d %s: %s (%.2f s)\n", c.id, out.pass ? "PASS" : "FAIL", c.title, secs);
        for (const auto& n : out.notes) std::printf("    %s\n", n.c_str());
        if (!out.pass) ++failed;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
