#include <doctest.h>

#include "sivhs/errors.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/vhs.hpp"

using namespace sivhs;

namespace {

void require_all(const Report& r) {
    for (const auto& c : r.checks()) {
        INFO(c.name << " " << c.witness);
        CHECK(c.pass);
    }
}

int cls(const VhsFrame& f, const std::string& name) { return f.classes->index(name); }

// e^{Gamma o / hbar} eta restricted to the even parameters, summed term by term on plain vectors.
Slices even_sector_oracle(const ModelPair& pair, const MCSolution& sol, const VhsFrame& frame) {
    const auto& ring = sol.ring;
    const int nv = static_cast<int>(ring->nvars());
    std::vector<int> even;
    for (int a = 0; a < nv; ++a)
        if ((ring->parity[a] & 1) == 0) even.push_back(a);
    auto act = [&](int a, const SparseVec& x) { return pair.m.circ.apply(sol.generators[a], x); };

    Slices out;
    // Enumerate exponent vectors on the even parameters of total degree <= order.
    std::vector<int> mu(even.size(), 0);
    while (true) {
        int total = 0;
        for (int e : mu) total += e;
        if (total <= sol.order) {
            SparseVec v = *pair.eta;
            Scalar denom(1);
            for (std::size_t k = 0; k < even.size(); ++k)
                for (int r = 1; r <= mu[k]; ++r) {
                    v = act(even[k], v);
                    denom *= Scalar(r);
                }
            if (!v.empty()) {
                Mono m(nv, 0);
                for (std::size_t k = 0; k < even.size(); ++k) m[even[k]] = static_cast<std::uint8_t>(mu[k]);
                auto c = frame.coordinates(v);
                for (std::size_t j = 0; j < c.size(); ++j) {
                    if (c[j].is_zero()) continue;
                    out[SliceKey{m, -2 * total + frame.weight[j]}][static_cast<int>(j)] = c[j] / denom;
                }
            }
        }
        std::size_t k = 0;
        while (k < mu.size() && ++mu[k] > sol.order) mu[k++] = 0;
        if (k == mu.size()) break;
    }
    return out;
}

bool only_even(const Mono& m, const SeriesRing& ring) {
    for (std::size_t a = 0; a < m.size(); ++a)
        if (m[a] != 0 && (ring.parity[a] & 1)) return false;
    return true;
}

} // namespace

TEST_CASE("l_hbar weights on the torus") {
    auto pair = build_model_A(1, Matrix::identity(1));
    auto frame = make_frame(pair);
    CHECK(frame.dim() == 4);
    CHECK(frame.weight[cls(frame, "psi1")] == 0);
    CHECK(frame.weight[cls(frame, "1")] == 1);
    CHECK(frame.weight[cls(frame, "psib1")] == 2);
    CHECK(frame.weight[cls(frame, "psi1*psib1")] == 1);

    auto ring = make_ring({"t"}, {0}, 2);
    HElem x(frame.classes, ring);
    for (std::size_t j = 0; j < frame.dim(); ++j)
        x += constant_element<HbarLaurent>(frame.classes, ring, unit_vector(static_cast<int>(j)));
    const HElem y = l_hbar(frame, x);
    for (const auto& [key, v] : slices_of(y))
        for (const auto& [j, c] : v) CHECK(key.power == frame.weight[j]);
    CHECK(l_hbar_inverse(frame, y) == x);
    CHECK(to_classes(frame, to_module(frame, x)) == x);
}

TEST_CASE("default opposite filtration") {
    for (int n : {1, 2}) {
        auto pair = build_model_A(n, Matrix::identity(n));
        auto frame = make_frame(pair);
        auto w = default_opposite(frame);
        validate_filtration(frame, w);
        CHECK(w.complementary);
        CHECK(w.isotropic);
        require_all(verify_filtration_pairing(frame, w, Window{-8, 8}));

        auto bad = hodge_as_filtration(frame);
        CHECK_THROWS_AS(validate_filtration(frame, bad), ValidationError);
    }
}

TEST_CASE("period map on the torus models") {
    for (int n : {1, 2}) {
        auto pair = build_model_A(n, Matrix::identity(n));
        auto sol = solve_mc(pair.g, 3);
        auto frame = make_frame(pair);
        auto p = period_map(pair, sol, frame, default_opposite(frame), *pair.eta);
        require_all(verify_period_map(p));
        CHECK(p.rank_checks > 0);
        CHECK(p.rank_failures == 0);
        REQUIRE(p.unit_param.has_value());
        CHECK(*p.unit_param == 0);

        // The default filtration already gives flat coordinates.
        for (std::size_t a = 0; a < sol.ring->nvars(); ++a)
            CHECK(p.tw_of_t[a] == SuperSeries::variable(sol.ring, static_cast<int>(a)));
        CHECK(p.psi_flat == p.psi);
    }
}

TEST_CASE("period map matches the exponential oracle on even parameters") {
    for (int n : {1, 2}) {
        auto pair = build_model_A(n, Matrix::identity(n));
        auto sol = solve_mc(pair.g, 3);
        auto frame = make_frame(pair);
        auto p = period_map(pair, sol, frame, default_opposite(frame), *pair.eta);
        Slices got;
        for (const auto& [key, v] : slices_of(p.psi))
            if (only_even(key.mono, *sol.ring)) got[key] = v;
        const Slices want = even_sector_oracle(pair, sol, frame);
        CHECK(got.size() == want.size());
        CHECK(got == want);
    }
}

TEST_CASE("tilted opposite filtration changes the flat coordinates") {
    auto pair = build_model_A(1, Matrix::identity(1));
    auto sol = solve_mc(pair.g, 3);
    auto frame = make_frame(pair);
    auto w = default_opposite(frame);
    SparseVec tilted{{cls(frame, "psib1"), Scalar(1)}, {cls(frame, "psi1"), Scalar(1)}};
    w.spans[1] = {tilted};
    validate_filtration(frame, w);
    CHECK(w.complementary);

    auto p = period_map(pair, sol, frame, w, *pair.eta);
    require_all(verify_period_map(p));
    bool moved = false;
    for (std::size_t a = 0; a < sol.ring->nvars(); ++a)
        if (!(p.tw_of_t[a] == SuperSeries::variable(sol.ring, static_cast<int>(a)))) moved = true;
    CHECK(moved);
}

TEST_CASE("filtration validation names the failing r") {
    auto pair = build_model_A(1, Matrix::identity(1));
    auto frame = make_frame(pair);
    auto w = default_opposite(frame);
    w.spans[1] = {};
    try {
        validate_filtration(frame, w);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("r = 1/2") != std::string::npos);
    }
}
