#include <random>

#include <benchmark/benchmark.h>

#include "sivhs/deformation.hpp"
#include "sivhs/dgbv.hpp"
#include "sivhs/frobenius.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/mirror.hpp"
#include "sivhs/vhs.hpp"

using namespace sivhs;

static void BM_DgbvAxioms(benchmark::State& state) {
    auto alg = polyvector_torus(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_dgbv_axioms(alg));
}
BENCHMARK(BM_DgbvAxioms)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Cohomology(benchmark::State& state) {
    auto alg = derham_torus(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cohomology(alg.d));
}
BENCHMARK(BM_Cohomology)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SolveMC(benchmark::State& state) {
    auto pair = build_model_A(2, Matrix::identity(2));
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_mc(pair.g, order));
}
BENCHMARK(BM_SolveMC)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_KahlerIdentities(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::vector<PolySection> sections, kappas;
    for (int i = 0; i < 20; ++i) {
        sections.push_back(random_section(n, SectionModel::Polyvector, 3, 12, rng));
        PolySection k;
        do {
            k = random_section(n, SectionModel::Form, 2, 12, rng, static_cast<int>(rng() % 2));
        } while (k.is_zero());
        kappas.push_back(k);
    }
    auto K = hessian_kahler(n, 3, 12);
    for (auto _ : state) benchmark::DoNotOptimize(verify_kahler_identities(K, sections, kappas, true));
}
BENCHMARK(BM_KahlerIdentities)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Frobenius(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto pair = build_model_A(n, Matrix::identity(n));
    for (auto _ : state) {
        auto sol = solve_mc(pair.g, 3);
        auto frame = make_frame(pair);
        auto p = period_map(pair, sol, frame, default_opposite(frame), *pair.eta);
        benchmark::DoNotOptimize(frobenius(pair, sol, p));
    }
}
BENCHMARK(BM_Frobenius)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_MirrorBothRoles(benchmark::State& state) {
    Matrix g = Matrix::identity(2);
    g(1, 1) = 2;
    auto t = make_flat_torus_pair(g);
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_mirror_both_roles(t, order));
}
BENCHMARK(BM_MirrorBothRoles)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
