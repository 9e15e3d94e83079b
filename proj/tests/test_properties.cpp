#include <doctest.h>

#include <random>

#include "covlab/covering.hpp"
#include "covlab/gluing.hpp"
#include "covlab/iso.hpp"
#include "covlab/pieces.hpp"
#include "covlab/symclosure.hpp"
#include "covlab/walls.hpp"
#include "test_util.hpp"

using namespace covlab;

namespace {

// Connected random multigraph: a spanning tree plus extra edges, mixed kinds.
GraphPtr random_graph(std::mt19937& rng, int n, int extra, bool with_dashed) {
    auto g = std::make_shared<Graph>();
    for (int i = 0; i < n; ++i) g->add_vertex("v" + std::to_string(i));
    std::uniform_int_distribution<int> pick(0, n - 1);
    int eid = 0;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> parent(0, i - 1);
        g->add_edge("e" + std::to_string(eid++), parent(rng), i);
    }
    for (int k = 0; k < extra; ++k) {
        EdgeKind kind = with_dashed && (rng() & 1) ? EdgeKind::dashed : EdgeKind::solid;
        g->add_edge("e" + std::to_string(eid++), pick(rng), pick(rng), kind);
    }
    return g;
}

std::vector<GraphPtr> small_corpus() {
    return {testutil::cycle(3),  testutil::cycle(4), testutil::cycle(6),
            testutil::path(4),   testutil::path(5),  testutil::rose(1),
            testutil::rose(2),   testutil::cycle(7),
            testutil::cycle(5),  testutil::path(3)};
}

}  // namespace

TEST_CASE("any single-dart corruption of a valid covering is rejected") {
    std::mt19937 rng(411);
    // a pool of valid coverings over assorted bases
    std::vector<CoveringMap> pool;
    PieceTemplate t = sec5_template();
    for (const CoveringMap& c : enumerate_coverings(t.piece, t.y1)) {
        pool.push_back(c);
        if (pool.size() >= 30) break;
    }
    for (const Cover& c : enumerate_covers(testutil::rose(2), 2)) pool.push_back(c.map);
    for (const Cover& c : enumerate_covers(testutil::rose(2), 3)) pool.push_back(c.map);
    for (const Cover& c : enumerate_covers(testutil::cycle(3), 2)) pool.push_back(c.map);
    while (pool.size() < 50) pool.push_back(*verify_covering(identity(random_graph(rng, 5, 3, false))));
    REQUIRE(pool.size() >= 50);

    for (std::size_t i = 0; i < 50; ++i) {
        const CoveringMap& c = pool[i];
        REQUIRE(verify_covering(c.f));
        Morphism bad = c.f;
        std::uniform_int_distribution<int> dart(0, bad.src->num_darts() - 1);
        int d = dart(rng);
        std::uniform_int_distribution<int> img(0, bad.dst->num_darts() - 2);
        int ni = img(rng);
        if (ni >= bad.dmap[d]) ++ni;  // guaranteed different image
        bad.dmap[d] = ni;
        CHECK(!verify_covering(bad));
    }
}

TEST_CASE("symmetry-restricted closure: anti-monotone and dual-formula agreement") {
    int tested = 0;
    for (GraphPtr g : small_corpus()) {
        auto aut = automorphisms(g);
        std::vector<Morphism> gens = {aut.front()};
        std::vector<Morphism> prev;
        for (int R = 0; R <= 2; ++R) {
            SymClosure sc = symmetry_restricted_closure(g, gens, R);
            auto dual = symmetry_restricted_closure_dual(g, gens, R);
            REQUIRE(dual.size() == sc.elements.size());
            for (std::size_t i = 0; i < dual.size(); ++i)
                CHECK(same_map(dual[i], sc.elements[i]));
            CHECK(sc.elements.size() <= aut.size());
            CHECK(sc.subgroup.size() <= sc.elements.size());
            if (R > 0) CHECK(sc.elements.size() <= prev.size());
            prev = sc.elements;
        }
        ++tested;
    }
    CHECK(tested == 10);
}

TEST_CASE("walls: pseudometric and the N*d bound across a corpus") {
    std::mt19937 rng(412);
    std::vector<GraphPtr> corpus = {testutil::cycle(4), testutil::cycle(5),
                                    testutil::cycle(6), testutil::path(4),
                                    testutil::path(6),  testutil::rose(2)};
    while (corpus.size() < 10) corpus.push_back(random_graph(rng, 6, 2, false));
    for (GraphPtr g : corpus) {
        WallSet ws = enumerate_walls(g, 3);
        WallReport rep = wall_report(ws);
        CHECK(rep.nd_bound_ok);
        int n = g->num_vertices();
        for (int x = 0; x < n; ++x) {
            CHECK(separation_count(ws, x, x) == 0);
            for (int y = 0; y < n; ++y) {
                CHECK(separation_count(ws, x, y) == separation_count(ws, y, x));
                for (int z = 0; z < n; ++z)
                    CHECK(separation_count(ws, x, z) <=
                          separation_count(ws, x, y) + separation_count(ws, y, z));
            }
        }
    }
}

TEST_CASE("subdivision and dashed materialization conserve the Euler characteristic") {
    std::mt19937 rng(413);
    std::uniform_int_distribution<int> nv(2, 8), ne(0, 5), kk(1, 4);
    for (int trial = 0; trial < 20; ++trial) {
        GraphPtr g = random_graph(rng, nv(rng), ne(rng), true);
        int k = kk(rng);
        Graph s = subdivide_all(*g, k);
        CHECK(s.euler_characteristic() == g->euler_characteristic());
        CHECK(s.num_components() == g->num_components());
        CHECK(s.num_vertices() == g->num_vertices() + (k - 1) * g->num_edges());

        Graph m = materialize_dashed(*g);
        CHECK(m.euler_characteristic() == g->euler_characteristic());
        CHECK(m.num_components() == g->num_components());

        // subdividing a random proper subset also conserves it
        std::vector<int> subset;
        for (int e = 0; e < g->num_edges(); ++e)
            if (rng() & 1) subset.push_back(e);
        Graph part = subdivide(*g, k, subset);
        CHECK(part.euler_characteristic() == g->euler_characteristic());
    }
}

TEST_CASE("assembled covers conserve the Euler characteristic per copy") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 2);
    auto idc = verify_covering(identity(t.x2));
    Weights w = weights_from_cover(*idc, sys);
    for (int mult = 1; mult <= 3; ++mult) {
        Weights wm = w;
        for (auto& r : wm.omega) r *= mult;
        for (auto& [k, r] : wm.nu) r *= mult;
        AssembledCover ac = assemble_cover(sys, wm);
        CHECK(ac.yhat->euler_characteristic() == mult * t.x2->euler_characteristic());
        CHECK(ac.num_copies == mult);
    }
}
