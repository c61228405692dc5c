#include <doctest.h>

#include "sivhs/errors.hpp"
#include "sivhs/mirror.hpp"

using namespace sivhs;

namespace {

void require_all(const Report& r) {
    for (const auto& c : r.checks()) {
        INFO(c.name << " " << c.witness);
        CHECK(c.pass);
    }
}

Matrix diag(std::vector<long> d) {
    Matrix g(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = Scalar(d[i]);
    return g;
}

SparseVec named(const BasisPtr& b, const std::string& s) { return unit_vector(b->index(s)); }

} // namespace

TEST_CASE("phi on generators") {
    auto map = mirror_map(make_flat_torus_pair(diag({2})));
    const auto& src = map.x.m.basis;
    const auto& dst = map.x_hat.m.basis;
    CHECK(phi_map(map, named(src, "psi1")) == named(dst, "dz1"));
    CHECK(phi_map(map, named(src, "psib1")) == scaled(named(dst, "dzb1"), Scalar(1, 2)));
    CHECK(phi_map(map, named(src, "1")) == named(dst, "1"));
    CHECK(phi_map(map, named(src, "psi1*psib1")) == scaled(named(dst, "dz1*dzb1"), Scalar(1, 2)));
    CHECK_THROWS_AS(phi_map(map, unit_vector(99)), DomainError);
}

TEST_CASE("phi mixes antiholomorphic generators through the inverse metric") {
    Matrix g(2, 2);
    g(0, 0) = Scalar(2);
    g(0, 1) = Scalar(1);
    g(1, 0) = Scalar(1);
    g(1, 1) = Scalar(1);
    auto map = mirror_map(make_flat_torus_pair(g));
    const auto& src = map.x.m.basis;
    const auto& dst = map.x_hat.m.basis;
    SparseVec want = add(named(dst, "dzb1"), scaled(named(dst, "dzb2"), Scalar(-1)));
    CHECK(phi_map(map, named(src, "psib1")) == want);
    require_all(verify_intertwining(map));
}

TEST_CASE("intertwining on the flat tori") {
    require_all(verify_intertwining(mirror_map(make_flat_torus_pair(diag({1})))));
    require_all(verify_intertwining(mirror_map(make_flat_torus_pair(diag({1, 2})))));
}

TEST_CASE("forgetting the metric breaks the intertwining") {
    auto map = mirror_map(make_flat_torus_pair(diag({1, 2})), MirrorOptions{true});
    const auto r = verify_intertwining(map);
    CHECK_FALSE(r.passed("phi(a o x) = phi(a) o phi(x)"));
    CHECK_FALSE(r.passed("phi is an isometry"));
    CHECK(r.passed("phi bijective"));
}

TEST_CASE("mirror theorem on the flat tori") {
    for (int order : {2, 3}) {
        CAPTURE(order);
        require_all(verify_mirror_both_roles(make_flat_torus_pair(diag({1})), order));
        require_all(verify_mirror_both_roles(make_flat_torus_pair(diag({1, 2})), order));
    }
}

TEST_CASE("mirror theorem with a tilted filtration") {
    auto t = make_flat_torus_pair(diag({3}));
    auto probe = run_mirror(t, 3);
    auto w = default_opposite(probe.a.frame);
    const int psib = probe.a.frame.classes->index("psib1");
    const int psi = probe.a.frame.classes->index("psi1");
    w.spans[1] = {SparseVec{{psib, Scalar(1)}, {psi, Scalar(2)}}};
    auto run = run_mirror(t, 3, w);
    require_all(run.report);
    CHECK_FALSE(run.a.period.psi_flat == probe.a.period.psi_flat);
}

TEST_CASE("metric validation") {
    Matrix g(2, 2);
    g(0, 1) = Scalar(1);
    CHECK_THROWS_AS(make_flat_torus_pair(g), ArgumentError);
    CHECK_THROWS_AS(make_flat_torus_pair(Matrix(2, 2)), ArgumentError);
}
