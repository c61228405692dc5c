#include <doctest.h>

#include <bit>
#include <cstdint>

#include "sivhs/frobenius.hpp"
#include "sivhs/kahler.hpp"

using namespace sivhs;

namespace {

void require_all(const Report& r) {
    for (const auto& c : r.checks()) {
        INFO(c.name << " " << c.witness);
        CHECK(c.pass);
    }
}

// Exterior algebra on dz_1..dz_n, dzb_1..dzb_n with masks in that bit order.
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

Scalar top(const Form& x, int n) {
    auto it = x.find((1u << (2 * n)) - 1u);
    return it == x.end() ? Scalar() : it->second;
}

struct Pipeline {
    ModelPair pair;
    MCSolution sol;
    PeriodMap period;
    FrobeniusData frob;
    std::vector<Form> delta;
};

Pipeline run(int n, int order) {
    Pipeline p;
    p.pair = build_model_A(n, Matrix::identity(n));
    p.sol = solve_mc(p.pair.g, order);
    auto frame = make_frame(p.pair);
    p.period = period_map(p.pair, p.sol, frame, default_opposite(frame), *p.pair.eta);
    p.frob = frobenius(p.pair, p.sol, p.period);
    for (const auto& gen : p.sol.generators) {
        Form f;
        for (const auto& [i, c] : gen) f[invariant_mask(*p.pair.g.basis, i)] = c;
        p.delta.push_back(f);
    }
    return p;
}

// (1/6) sum_abc int(D_a D_b D_c) t^c t^b t^a.
SuperSeries cubic_oracle(const Pipeline& p) {
    const auto& ring = p.frob.potential.ring();
    const std::size_t dim = p.delta.size();
    SuperSeries phi(ring);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c) {
                const Scalar v = top(wedge(wedge(p.delta[a], p.delta[b]), p.delta[c]), p.pair.n);
                if (v.is_zero()) continue;
                phi += (SuperSeries::variable(ring, static_cast<int>(c)) * SuperSeries::variable(ring, static_cast<int>(b)) *
                        SuperSeries::variable(ring, static_cast<int>(a)))
                           .scaled(v * Scalar(1, 6));
            }
    return phi;
}

} // namespace

TEST_CASE("frobenius structure of the torus n=1 matches the cup product") {
    auto p = run(1, 3);
    const auto& f = p.frob;
    require_all(verify_frobenius(f));
    CHECK(f.potential == cubic_oracle(p));

    const std::size_t dim = f.dim();
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            INFO(a << "," << b);
            CHECK(f.g(a, b) == top(wedge(p.delta[a], p.delta[b]), 1));
            // Cup product structure constants, constant in t.
            const Form prod = wedge(p.delta[a], p.delta[b]);
            for (std::size_t c = 0; c < dim; ++c) {
                Scalar want;
                for (const auto& [m, x] : p.delta[c])
                    if (prod.count(m)) want = prod.at(m) / x;
                CHECK(f.A[a][b][c] == SuperSeries::scalar(f.ring, want));
            }
        }
}

TEST_CASE("Euler field is the grading field on the torus") {
    for (int n : {1, 2}) {
        auto p = run(n, 3);
        for (std::size_t c = 0; c < p.frob.dim(); ++c) {
            const int deg = std::popcount(p.delta[c].begin()->first);
            const auto want = SuperSeries::variable(p.frob.ring, static_cast<int>(c)).scaled(Scalar(2 - deg, 2));
            CHECK(p.frob.euler[c] == want);
        }
    }
}

TEST_CASE("frobenius structure of the torus n=2") {
    auto p = run(2, 3);
    require_all(verify_frobenius(p.frob));
    CHECK(p.frob.potential == cubic_oracle(p));
}

TEST_CASE("frobenius structure at order 4") {
    auto p = run(1, 4);
    require_all(verify_frobenius(p.frob));
    CHECK(p.frob.potential == cubic_oracle(p));
}

TEST_CASE("perturbed structure constants break WDVV") {
    auto p = run(1, 3);
    auto f = p.frob;
    const int dz = 1, dzb = 3;
    REQUIRE(p.delta[dz].begin()->first == 1u);
    REQUIRE(p.delta[dzb].begin()->first == 2u);
    f.A[dz][dzb][dz] += SuperSeries::scalar(f.ring, 1);
    const auto r = verify_frobenius(f);
    CHECK_FALSE(r.passed("WDVV"));
    CHECK_FALSE(r.find("WDVV")->witness.empty());
}

TEST_CASE("metric needs a pairing") {
    auto p = run(1, 3);
    auto period = p.period;
    period.frame.gram.reset();
    CHECK_THROWS_AS(metric(period, std::vector<int>(p.frob.dim(), 1)), ConfigurationError);
}
