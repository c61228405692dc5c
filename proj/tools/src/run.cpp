#include "sivhs_cli/run.hpp"

#include <bit>
#include <functional>
#include <map>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "sivhs/deformation.hpp"
#include "sivhs/errors.hpp"
#include "sivhs/frobenius.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/mirror.hpp"
#include "sivhs/vhs.hpp"

namespace sivhs::cli {

namespace {

const std::string kModule = "cli";

struct Doc {
    Json checks = Json::array();
    Json result = Json::object();

    void add(const Report& r, const std::string& prefix = {}) {
        for (const auto& c : r.checks())
            checks.push_back(
                {{"suite", prefix + r.title()}, {"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    }
    bool pass() const {
        for (const auto& c : checks)
            if (!c["pass"].get<bool>()) return false;
        return true;
    }
};

Json series_json(const SuperSeries& s) {
    Json j = Json::object();
    for (const auto& [m, c] : s.terms()) j[mono_str(m, *s.ring())] = rational(c);
    return j;
}

Json vec_json(const SparseVec& v, const GradedBasis& B) {
    Json j = Json::object();
    for (const auto& [i, c] : v) j[B.name(i)] = rational(c);
    return j;
}

Json element_json(const SElem& x) {
    Json j = Json::object();
    for (const auto& [i, s] : x.c) j[x.basis->name(i)] = series_json(s);
    return j;
}

Json matrix_json(const Matrix& g) { return metric_to_json(g)["g"]; }

// Model given by --model: a dGBV algebra (builtin or spec file) or an invariant torus model.
struct Model {
    std::string name;
    std::optional<DgbvAlgebra> alg;
    ModelPair pair;
    bool torus_a = false;
    std::optional<Matrix> metric;
};

std::optional<int> torus_dim(const std::string& name, const std::string& prefix) {
    if (name == prefix + "n1") return 1;
    if (name == prefix + "n2") return 2;
    return std::nullopt;
}

Matrix load_metric(const Options& o, int n) {
    if (!o.metric) return Matrix::identity(n);
    Matrix g = parse_metric(*o.metric);
    if (static_cast<int>(g.rows()) != n)
        throw ArgumentError(kModule, "metric " + *o.metric + " has n = " + std::to_string(g.rows()) +
                                         " but the model has n = " + std::to_string(n));
    return g;
}

Model resolve_model(const Options& o, const std::string& fallback) {
    Model m;
    m.name = o.model.value_or(fallback);
    if (auto n = torus_dim(m.name, "torus-")) {
        m.metric = load_metric(o, *n);
        m.pair = build_model_A(*n, *m.metric);
        m.torus_a = true;
        return m;
    }
    if (auto n = torus_dim(m.name, "torus-b-")) {
        m.metric = load_metric(o, *n);
        m.pair = build_model_B(*n, *m.metric);
        return m;
    }
    if (auto alg = builtin_algebra(m.name)) {
        m.alg = *alg;
    } else if (m.name.size() > 5 && m.name.ends_with(".json")) {
        m.alg = parse_spec(m.name);
    } else {
        throw ArgumentError(kModule, "unknown model '" + m.name + "'");
    }
    m.pair = pair_from_dgbv(*m.alg);
    return m;
}

// Exterior algebra on dz_1..dz_n, dzb_1..dzb_n, masks in that bit order.
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

// (1/6) sum int(D_a D_b D_c) t^c t^b t^a with int the top coefficient.
SuperSeries cup_product_cubic(const ModelPair& pair, const MCSolution& sol, const RingPtr& ring) {
    std::vector<Form> delta;
    for (const auto& gen : sol.generators) {
        Form f;
        for (const auto& [i, c] : gen) f[invariant_mask(*pair.g.basis, i)] = c;
        delta.push_back(f);
    }
    const std::uint32_t top = (1u << (2 * pair.n)) - 1u;
    SuperSeries phi(ring);
    const int dim = static_cast<int>(delta.size());
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const Form ab = wedge(delta[a], delta[b]);
            for (int c = 0; c < dim; ++c) {
                const Form abc = wedge(ab, delta[c]);
                auto it = abc.find(top);
                if (it == abc.end()) continue;
                phi += (SuperSeries::variable(ring, c) * SuperSeries::variable(ring, b) * SuperSeries::variable(ring, a))
                           .scaled(it->second * Scalar(1, 6));
            }
        }
    return phi;
}

Report axiom_suite(const DgbvAlgebra& alg) {
    Report r("axioms: " + alg.name);
    r.merge(check_dgbv_axioms(alg), "dgbv ");
    r.merge(check_odd_lie(derived_bracket_table(alg), alg.d, &alg.product), "odd lie ");
    auto pair = pair_from_dgbv(alg);
    r.merge(check_module_axioms(pair.g, pair.m, hbar_module), "module ");
    return r;
}

Report pair_axiom_suite(const ModelPair& pair) {
    Report r("axioms: " + pair.name);
    r.merge(check_odd_lie(pair.g.bracket, pair.g.d), "odd lie ");
    r.merge(check_module_axioms(pair.g, pair.m, hbar_module), "module ");
    r.merge(check_module_axioms(pair.g, pair.m, plain_module), "plain module ");
    return r;
}

// Random total-odd gauge element with coefficients of degree 2.
SElem random_gauge(const BasisPtr& basis, const RingPtr& ring, std::mt19937_64& rng) {
    SElem x(basis, ring);
    std::vector<Mono> monos;
    const int nv = static_cast<int>(ring->nvars());
    for (int a = 0; a < nv; ++a)
        for (int b = a; b < nv; ++b) {
            Mono m;
            if (mono_product(mono_var(*ring, a), mono_var(*ring, b), *ring, m) != 0) monos.push_back(m);
        }
    if (monos.empty()) return x;
    for (int k = 0; k < 4; ++k) {
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

Json cohomology_json(const LinearOp& op) {
    const auto data = cohomology(op);
    Json dims = Json::array();
    for (const auto& [deg, k] : cohomology_dimensions(data))
        if (k) dims.push_back({{"p", deg.p}, {"q", deg.q}, {"dim", k}});
    Json reps = Json::array();
    for (const auto& v : data.reps) reps.push_back(vec_json(v, *op.src()));
    return {{"total", data.dim()}, {"dimensions", dims}, {"representatives", reps}};
}

Report homotopy_report(const LinearOp& op, const std::string& title) {
    Report r(title);
    const auto c = cohomology(op);
    r.add("squares to zero", op.compose(op).is_zero());
    auto lhs = op.compose(c.h).plus(c.h.compose(op));
    auto rhs = LinearOp::identity(op.src()).minus(c.pi);
    r.add("dh + hd = 1 - pi", lhs.equals(rhs));
    r.add("pi idempotent", c.pi.compose(c.pi).equals(c.pi));
    bool closed = true;
    for (const auto& v : c.reps)
        if (!op.apply(v).empty()) closed = false;
    r.add("representatives closed", closed);
    return r;
}

void cmd_verify(const Options& o, Doc& doc) {
    Model m = resolve_model(o, "torus-n1");
    doc.result["model"] = m.name;
    doc.result["dim"] = m.pair.m.basis->dim();
    if (m.alg) {
        doc.add(axiom_suite(*m.alg));
        doc.add(check_module_axioms(m.pair.g, m.pair.m, plain_module), "plain ");
        doc.result["manin"] = check_manin(*m.alg).verdict;
    } else {
        doc.add(pair_axiom_suite(m.pair));
    }
}

void cmd_cohomology(const Options& o, Doc& doc) {
    Model m = resolve_model(o, "torus-n1");
    doc.result["model"] = m.name;
    std::vector<std::pair<std::string, LinearOp>> ops;
    if (m.alg) {
        ops = {{"d", m.alg->d}, {"delta", m.alg->delta}};
        doc.result["manin"] = check_manin(*m.alg).verdict;
        doc.result["harmonic"] = harmonic_representatives(*m.alg).size();
    } else {
        ops = {{"g d", m.pair.g.d}, {"m d", m.pair.m.d}, {"m delta", m.pair.m.delta}};
        doc.result["harmonic"] = harmonic_representatives(m.pair.m.d, m.pair.m.delta).size();
    }
    Json complexes = Json::object();
    for (const auto& [name, op] : ops) {
        complexes[name] = cohomology_json(op);
        doc.add(homotopy_report(op, "cohomology " + name));
        doc.add(cohomology_rank_oracle(op, "rank oracle " + name));
    }
    doc.result["complexes"] = complexes;
}

Json parameters_json(const MCSolution& sol, const GradedBasis& B) {
    Json params = Json::array();
    for (std::size_t a = 0; a < sol.generators.size(); ++a)
        params.push_back({{"name", sol.ring->names[a]},
                          {"parity", sol.ring->parity[a] & 1},
                          {"generator", vec_json(sol.generators[a], B)}});
    return params;
}

void cmd_deform(const Options& o, Doc& doc) {
    Model m = resolve_model(o, "torus-n1");
    MCSolution sol = solve_mc(m.pair.g, o.order);
    doc.result["model"] = m.name;
    doc.result["order"] = o.order;
    doc.result["parameters"] = parameters_json(sol, *m.pair.g.basis);
    doc.result["gamma"] = element_json(sol.gamma);
    Json obs = Json::array();
    for (const auto& ob : sol.obstructions) obs.push_back({{"order", ob.order}, {"class", element_json(ob.projection)}});
    doc.result["obstructions"] = obs;

    Report r("deformation");
    r.add("unobstructed", sol.unobstructed(),
          sol.unobstructed() ? std::string() : "order " + std::to_string(sol.obstructions.front().order));
    if (sol.unobstructed()) {
        const SElem res = mc_residual(m.pair.g, sol.gamma);
        r.add("MC residual vanishes mod m^(N+1)", res.is_zero(), res.str());
        if (sol.unit_param) r.add("unit normalized", is_unit_normalized(m.pair.g, sol));
        doc.add(r);
        doc.add(verify_flatness_identities(m.pair.g, m.pair.m, sol.gamma, hbar_module));
    } else {
        doc.add(r);
    }
}

struct FrobeniusRun {
    MCSolution sol;
    PeriodMap period;
    FrobeniusData frob;
};

FrobeniusRun frobenius_pipeline(const ModelPair& pair, int order, const std::optional<std::string>& filtration) {
    if (!pair.eta) throw ConfigurationError(kModule, "model " + pair.name + " has no calibration element");
    FrobeniusRun run;
    run.sol = solve_mc(pair.g, order);
    auto frame = make_frame(pair);
    OppositeFiltration w = filtration ? parse_filtration(*filtration, frame) : default_opposite(frame);
    run.period = period_map(pair, run.sol, frame, w, *pair.eta);
    run.frob = frobenius(pair, run.sol, run.period);
    return run;
}

void cmd_frobenius(const Options& o, Doc& doc) {
    Model m = resolve_model(o, "torus-n1");
    auto run = frobenius_pipeline(m.pair, o.order, o.filtration);
    const auto& f = run.frob;
    doc.result["model"] = m.name;
    doc.result["order"] = o.order;
    doc.result["parameters"] = parameters_json(run.sol, *m.pair.g.basis);
    doc.result["metric"] = matrix_json(f.g);
    doc.result["potential"] = series_json(f.potential);
    Json euler = Json::object();
    for (std::size_t a = 0; a < f.euler.size(); ++a) euler[f.ring->names[a]] = series_json(f.euler[a]);
    doc.result["euler"] = euler;
    doc.add(verify_period_map(run.period));
    doc.add(f.extraction);
    doc.add(verify_frobenius(f));
    if (m.torus_a && !o.filtration) {
        Report r("cup product oracle");
        const SuperSeries oracle = cup_product_cubic(m.pair, run.sol, f.potential.ring());
        r.add("Phi = cup-product cubic", f.potential == oracle, (f.potential - oracle).str());
        doc.add(r);
    }
}

void cmd_mirror(const Options& o, Doc& doc) {
    Matrix g;
    if (o.model) {
        auto n = torus_dim(*o.model, "torus-");
        if (!n) throw ArgumentError(kModule, "mirror needs a torus-n1 or torus-n2 model, got '" + *o.model + "'");
        g = load_metric(o, *n);
    } else {
        g = o.metric ? parse_metric(*o.metric) : Matrix::identity(1);
    }
    const FlatTorusPair t = make_flat_torus_pair(g);
    doc.result["n"] = t.n;
    doc.result["order"] = o.order;
    doc.result["metric"] = matrix_json(t.g);
    doc.result["dual_metric"] = matrix_json(t.g_inv);
    doc.add(verify_intertwining(mirror_map(t)));
    doc.add(verify_mirror_both_roles(t, o.order));
    if (o.filtration) {
        auto pair = build_model_A(t.n, t.g);
        auto frame = make_frame(pair);
        doc.add(verify_mirror_theorem(t, o.order, parse_filtration(*o.filtration, frame)), "filtered ");
    }
    doc.result["equality"] = doc.pass() ? "pass" : "fail";
}

Matrix small_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

void cmd_selftest(const Options& o, Doc& doc) {
    if (o.cases < 2) throw ArgumentError(kModule, "--cases must be at least 2");
    std::mt19937_64 rng(o.seed);
    doc.result["seed"] = o.seed;
    doc.result["cases"] = o.cases;

    Json suites = Json::array();
    auto suite = [&](const std::string& name, const std::function<void()>& body) {
        const std::size_t before = doc.checks.size();
        body();
        bool ok = true;
        for (std::size_t i = before; i < doc.checks.size(); ++i) ok = ok && doc.checks[i]["pass"].get<bool>();
        suites.push_back({{"suite", name}, {"checks", doc.checks.size() - before}, {"pass", ok}});
    };

    suite("axioms", [&] {
        for (const auto& name : builtin_algebras()) {
            if (name == "truncated-poly") continue;
            doc.add(axiom_suite(*builtin_algebra(name)));
        }
        for (int n : {1, 2}) {
            doc.add(pair_axiom_suite(build_model_A(n, Matrix::identity(n))));
            doc.add(pair_axiom_suite(build_model_B(n, Matrix::identity(n))));
        }
    });

    suite("kahler identities", [&] {
        for (int n : {1, 2}) {
            std::vector<PolySection> sections, kappas;
            for (int i = 0; i < o.cases; ++i) {
                sections.push_back(random_section(n, SectionModel::Polyvector, 3, 12, rng));
                PolySection k;
                do {
                    k = random_section(n, SectionModel::Form, 2, 12, rng, static_cast<int>(rng() % 2));
                } while (k.is_zero());
                kappas.push_back(k);
            }
            const std::string tag = "n=" + std::to_string(n) + " ";
            auto constant = constant_kahler(n == 1 ? small_matrix({{2}}) : small_matrix({{2, 1}, {1, 3}}), 12);
            doc.add(verify_kahler_identities(constant, sections, kappas, false), tag + "constant omega ");
            doc.add(verify_module_identities(constant, sections, kappas, false), tag + "constant omega ");
            auto origin = hessian_kahler(n, o.seed + static_cast<std::uint64_t>(n), 12);
            doc.add(verify_kahler_identities(origin, sections, kappas, true), tag + "Kahler at origin ");
            doc.add(verify_module_identities(origin, sections, kappas, true), tag + "Kahler at origin ");
            if (n == 2) {
                Report bad = verify_kahler_identities(non_kahler(n, 12), sections, kappas, true);
                Report r("non-Kahler omega");
                r.add(tag + "failure detected", !bad.all_pass());
                doc.add(r);
            }
        }
    });

    suite("maurer-cartan", [&] {
        const int trials = std::max(1, o.cases / 10);
        for (int n : {1, 2}) {
            for (const auto& pair : {build_model_A(n, Matrix::identity(n)), build_model_B(n, Matrix::identity(n))}) {
                Report r("maurer-cartan: " + pair.name);
                auto sol = solve_mc(pair.g, 4);
                r.add("unobstructed", sol.unobstructed());
                r.add("residual vanishes mod m^5", mc_residual(pair.g, sol.gamma).is_zero());
                int moved_ok = 0;
                for (int k = 0; k < trials; ++k) {
                    SElem x = random_gauge(pair.g.basis, sol.ring, rng);
                    if (mc_residual(pair.g, gauge_action(pair.g, sol.gamma, x)).is_zero()) ++moved_ok;
                }
                r.add("gauge transforms re-verify", moved_ok == trials,
                      std::to_string(moved_ok) + " of " + std::to_string(trials));
                doc.add(r);
            }
        }
        auto alg = heisenberg_bv_fixture();
        auto sol = solve_mc(pair_from_dgbv(alg).g, 3);
        Report r("maurer-cartan: " + alg.name);
        r.add("obstruction at order 2", !sol.unobstructed() && sol.obstructions.front().order == 2);
        doc.add(r);
    });

    suite("period map", [&] {
        for (int n : {1, 2}) {
            auto run = frobenius_pipeline(build_model_A(n, Matrix::identity(n)), 3, std::nullopt);
            doc.add(verify_period_map(run.period), "n=" + std::to_string(n) + " ");
        }
    });

    suite("frobenius", [&] {
        auto pair = build_model_A(1, Matrix::identity(1));
        auto run = frobenius_pipeline(pair, 3, std::nullopt);
        doc.add(run.frob.extraction);
        doc.add(verify_frobenius(run.frob));
        Report r("cup product oracle");
        r.add("Phi = cup-product cubic", run.frob.potential == cup_product_cubic(pair, run.sol, run.frob.potential.ring()));
        doc.add(r);
    });

    suite("mirror", [&] {
        doc.add(verify_mirror_both_roles(make_flat_torus_pair(small_matrix({{1}})), 2), "n=1 ");
        doc.add(verify_mirror_both_roles(make_flat_torus_pair(small_matrix({{1, 0}, {0, 2}})), 2), "n=2 ");
    });

    suite("oracles", [&] {
        for (const auto& name : builtin_algebras()) {
            auto alg = *builtin_algebra(name);
            doc.add(bracket_oracle(alg));
            doc.add(cohomology_rank_oracle(alg.d, "rank oracle d: " + name));
            doc.add(cohomology_rank_oracle(alg.delta, "rank oracle delta: " + name));
        }
    });

    doc.result["suites"] = suites;
}

const std::map<std::string, std::function<void(const Options&, Doc&)>>& commands() {
    static const std::map<std::string, std::function<void(const Options&, Doc&)>> table{
        {"verify", cmd_verify},       {"cohomology", cmd_cohomology}, {"deform", cmd_deform},
        {"frobenius", cmd_frobenius}, {"mirror", cmd_mirror},         {"selftest", cmd_selftest},
    };
    return table;
}

} // namespace

std::vector<std::string> builtin_algebras() {
    return {"elliptic-curve",      "polyvector-torus-n1", "polyvector-torus-n2", "dolbeault-torus-n1",
            "dolbeault-torus-n2",  "derham-torus-n1",     "derham-torus-n2",     "truncated-poly",
            "heisenberg-bv",       "heisenberg-ce",       "non-manin",           "heisenberg-product"};
}

std::optional<DgbvAlgebra> builtin_algebra(const std::string& name) {
    static const std::map<std::string, std::function<DgbvAlgebra()>> table{
        {"elliptic-curve", [] { return elliptic_curve(); }},
        {"polyvector-torus-n1", [] { return polyvector_torus(1); }},
        {"polyvector-torus-n2", [] { return polyvector_torus(2); }},
        {"dolbeault-torus-n1", [] { return dolbeault_torus(1); }},
        {"dolbeault-torus-n2", [] { return dolbeault_torus(2); }},
        {"derham-torus-n1", [] { return derham_torus(1); }},
        {"derham-torus-n2", [] { return derham_torus(2); }},
        {"truncated-poly", [] { return truncated_poly_fixture(); }},
        {"heisenberg-bv", [] { return heisenberg_bv_fixture(); }},
        {"heisenberg-ce", [] { return heisenberg_ce_fixture(); }},
        {"non-manin", [] { return non_manin_fixture(); }},
        {"heisenberg-product", [] { return heisenberg_product_fixture(); }},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second();
}

std::vector<std::string> builtin_models() {
    auto names = builtin_algebras();
    for (const char* t : {"torus-n1", "torus-n2", "torus-b-n1", "torus-b-n2"}) names.push_back(t);
    return names;
}

Report bracket_oracle(const DgbvAlgebra& alg) {
    Report r("bracket oracle: " + alg.name);
    const auto& B = *alg.basis;
    const std::size_t dim = B.dim();
    using Dense = std::vector<Scalar>;
    auto delta = [&](const Dense& x) {
        Dense y(dim);
        for (std::size_t j = 0; j < dim; ++j)
            if (!x[j].is_zero())
                for (std::size_t i = 0; i < dim; ++i) y[i] += alg.delta.entry(static_cast<int>(i), static_cast<int>(j)) * x[j];
        return y;
    };
    auto product = [&](const Dense& x, const Dense& y) {
        Dense z(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            if (x[a].is_zero()) continue;
            for (std::size_t b = 0; b < dim; ++b) {
                if (y[b].is_zero()) continue;
                for (const auto& [c, v] : alg.product.at(static_cast<int>(a), static_cast<int>(b))) z[c] += x[a] * y[b] * v;
            }
        }
        return z;
    };
    const Bilinear table = derived_bracket_table(alg);
    std::string direct_fail, table_fail;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Dense ei(dim), ej(dim);
            ei[i] = 1;
            ej[j] = 1;
            const Scalar s = B.parity(static_cast<int>(i)) ? Scalar(-1) : Scalar(1);
            Dense t1 = delta(product(ei, ej)), t2 = product(delta(ei), ej), t3 = product(ei, delta(ej));
            Dense expect(dim);
            for (std::size_t k = 0; k < dim; ++k) expect[k] = s * t1[k] - s * t2[k] - t3[k];
            const SparseVec want = sparse(expect);
            const std::string pair = B.name(static_cast<int>(i)) + ", " + B.name(static_cast<int>(j));
            if (direct_fail.empty() && derived_bracket(alg, unit_vector(static_cast<int>(i)), unit_vector(static_cast<int>(j))) != want)
                direct_fail = pair;
            if (table_fail.empty() && table.at(static_cast<int>(i), static_cast<int>(j)) != want) table_fail = pair;
        }
    r.add("derived_bracket = direct expansion", direct_fail.empty(), direct_fail);
    r.add("bracket table = direct expansion", table_fail.empty(), table_fail);
    return r;
}

Report cohomology_rank_oracle(const LinearOp& op, const std::string& title) {
    Report r(title);
    const auto& B = *op.src();
    std::map<Bidegree, std::vector<int>> by_degree;
    for (std::size_t i = 0; i < B.dim(); ++i) by_degree[B.bidegree(static_cast<int>(i))].push_back(static_cast<int>(i));
    auto block_rank = [&](Bidegree from) -> std::size_t {
        auto src = by_degree.find(from);
        auto dst = by_degree.find(from + op.shift());
        if (src == by_degree.end() || dst == by_degree.end()) return 0;
        Matrix m(dst->second.size(), src->second.size());
        for (std::size_t a = 0; a < dst->second.size(); ++a)
            for (std::size_t b = 0; b < src->second.size(); ++b) m(a, b) = op.entry(dst->second[a], src->second[b]);
        return rank(m);
    };
    const auto computed = cohomology_dimensions(cohomology(op));
    std::string mismatch;
    for (const auto& [deg, idx] : by_degree) {
        const long oracle = static_cast<long>(idx.size()) - static_cast<long>(block_rank(deg)) -
                            static_cast<long>(block_rank(deg - op.shift()));
        auto it = computed.find(deg);
        const long got = it == computed.end() ? 0 : it->second;
        if (oracle != got && mismatch.empty())
            mismatch = "(" + std::to_string(deg.p) + "," + std::to_string(deg.q) + "): " + std::to_string(got) +
                       " vs " + std::to_string(oracle);
    }
    for (const auto& [deg, k] : computed)
        if (k && !by_degree.count(deg) && mismatch.empty()) mismatch = "class outside the basis degrees";
    r.add("dim H per bidegree = rank oracle", mismatch.empty(), mismatch);
    return r;
}

Outcome run(const Options& options) {
    Outcome out;
    Json& doc = out.report;
    doc["command"] = options.command;
    auto it = commands().find(options.command);
    if (it == commands().end()) throw ArgumentError(kModule, "unknown command '" + options.command + "'");
    Doc d;
    try {
        it->second(options, d);
        doc["checks"] = d.checks;
        doc["result"] = d.result;
        doc["verdict"] = d.pass() ? "pass" : "fail";
    } catch (const Error& e) {
        doc["checks"] = d.checks;
        doc["error"] = {{"kind", e.kind()}, {"module", e.module()}, {"message", e.what()}};
        doc["verdict"] = "fail";
    }
    out.exit_code = doc["verdict"] == "pass" ? 0 : 1;
    return out;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app("Semi-infinite variations of Hodge structure and Frobenius manifolds from dGBV algebras", "sivhs");
    app.require_subcommand(1, 1);
    Options o;
    auto add_model = [&](CLI::App* c) {
        c->add_option("--model", o.model, "builtin model name or algebra spec file");
        c->add_option("--metric", o.metric, "metric file");
    };
    auto add_order = [&](CLI::App* c) { c->add_option("--order", o.order, "truncation order N")->check(CLI::Range(1, 8)); };

    auto* verify = app.add_subcommand("verify", "axiom suites for a model");
    add_model(verify);
    auto* coh = app.add_subcommand("cohomology", "cohomology dimensions and representatives");
    add_model(coh);
    auto* deform = app.add_subcommand("deform", "Maurer-Cartan solution to order N");
    add_model(deform);
    add_order(deform);
    auto* frob = app.add_subcommand("frobenius", "period map and Frobenius manifold");
    add_model(frob);
    add_order(frob);
    frob->add_option("--filtration", o.filtration, "opposite filtration file");
    auto* mirror = app.add_subcommand("mirror", "A-model on X against B-model on the dual torus");
    add_model(mirror);
    add_order(mirror);
    mirror->add_option("--filtration", o.filtration, "opposite filtration file");
    auto* self = app.add_subcommand("selftest", "property suites");
    self->add_option("--seed", o.seed, "random seed");
    self->add_option("--cases", o.cases, "random cases per property")->check(CLI::Range(2, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }
    o.command = app.get_subcommands().front()->get_name();
    Outcome r = run(o);
    out << dump(r.report);
    return r.exit_code;
}

} // namespace sivhs::cli
