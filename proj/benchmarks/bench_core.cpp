// Microbenchmarks for the hot paths: cover enumeration, isomorphism,
// truncation building, gluing-system derivation, and wall enumeration.

#include <benchmark/benchmark.h>

#include "covlab/covering.hpp"
#include "covlab/gluing.hpp"
#include "covlab/iso.hpp"
#include "covlab/pieces.hpp"
#include "covlab/walls.hpp"

using namespace covlab;

static void BM_EnumerateCoverings(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    for (auto _ : state) {
        auto covers = enumerate_coverings(t.piece, t.y1);
        benchmark::DoNotOptimize(covers);
    }
}
BENCHMARK(BM_EnumerateCoverings);

static void BM_VerifyCovering(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    for (auto _ : state) {
        auto cm = verify_covering(t.p1);
        benchmark::DoNotOptimize(cm);
    }
}
BENCHMARK(BM_VerifyCovering);

static void BM_Automorphisms(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    for (auto _ : state) {
        auto aut = automorphisms(t.piece);
        benchmark::DoNotOptimize(aut);
    }
}
BENCHMARK(BM_Automorphisms);

static void BM_Isomorphic(benchmark::State& state) {
    PieceTemplate t = sec4_template();
    for (auto _ : state) {
        auto iso = isomorphic(t.y1, t.y2);
        benchmark::DoNotOptimize(iso);
    }
}
BENCHMARK(BM_Isomorphic);

static void BM_BuildTruncation(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    int R = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Truncation tr = build_truncation(t, R);
        benchmark::DoNotOptimize(tr);
    }
}
BENCHMARK(BM_BuildTruncation)->Arg(1)->Arg(2);

static void BM_RadialCover(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    Truncation tr = build_truncation(t, 2);
    for (auto _ : state) {
        RadialCoverResult rc = radial_cover(tr, 1);
        benchmark::DoNotOptimize(rc);
    }
}
BENCHMARK(BM_RadialCover);

static void BM_DeriveGluingSystem(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    int target = static_cast<int>(state.range(0));
    for (auto _ : state) {
        GluingSystem sys = derive_gluing_system(t, target);
        benchmark::DoNotOptimize(sys);
    }
}
BENCHMARK(BM_DeriveGluingSystem)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_EnumerateWalls(benchmark::State& state) {
    PieceTemplate t = sec5_template();
    Truncation tr = build_truncation(t, 1);
    for (auto _ : state) {
        WallSet ws = enumerate_walls(tr.graph, 2);
        benchmark::DoNotOptimize(ws);
    }
}
BENCHMARK(BM_EnumerateWalls)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
