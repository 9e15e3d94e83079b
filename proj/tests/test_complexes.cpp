#include <doctest.h>

#include <set>

#include "covlab/complexes.hpp"
#include "covlab/iso.hpp"
#include "test_util.hpp"

using namespace covlab;

namespace {
// single vertex with two loops e, f; squares given as strings over
// {e,E,f,F} (upper case = reversed dart)
SquaredComplex two_loop_complex(const std::vector<std::string>& words) {
    auto g = std::make_shared<Graph>();
    int v = g->add_vertex("v");
    g->add_edge("e", v, v);
    g->add_edge("f", v, v);
    std::vector<std::vector<int>> squares;
    for (const auto& w : words) {
        std::vector<int> c;
        for (char ch : w) {
            switch (ch) {
                case 'e': c.push_back(0); break;
                case 'E': c.push_back(1); break;
                case 'f': c.push_back(2); break;
                case 'F': c.push_back(3); break;
            }
        }
        squares.push_back(std::move(c));
    }
    return make_complex(g, squares);
}
}  // namespace

TEST_CASE("square completion: cycle, tree, idempotence") {
    auto c4 = testutil::cycle(4);
    SquaredComplex k = square_completion(c4);
    CHECK(k.num_squares() == 1);

    auto p5 = testutil::path(5);
    CHECK(square_completion(p5).num_squares() == 0);

    // completing the same skeleton again yields the same squares
    SquaredComplex again = square_completion(k.skeleton);
    CHECK(again.squares == k.squares);
}

TEST_CASE("make_complex validates and dedups") {
    auto c4 = testutil::cycle(4);
    std::vector<int> boundary = {0, 2, 4, 6};
    SquaredComplex k = make_complex(c4, {boundary, {2, 4, 6, 0}});
    CHECK(k.num_squares() == 1);  // rotation of the same circuit
    CHECK_THROWS_AS(make_complex(c4, {{0, 2, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(make_complex(c4, {{0, 4, 2, 6}}), std::invalid_argument);
}

TEST_CASE("subdividing a single square gives the 6x6 grid disk") {
    auto c4 = testutil::cycle(4);
    SquaredComplex k = square_completion(c4);
    SquaredComplex grid = hash_subdivide(k);
    CHECK(grid.skeleton->num_vertices() == 36);
    CHECK(grid.skeleton->num_edges() == 60);
    CHECK(grid.num_squares() == 25);
    CHECK(grid.euler_characteristic() == k.euler_characteristic());
    CHECK(is_npc(grid).npc);
    CHECK(check_square_recovery(k));

    // interior vertices have valence 4 and 4-cycle links
    int interior = 0;
    for (int v = 0; v < grid.skeleton->num_vertices(); ++v) {
        if (grid.skeleton->vertex(v).label.rfind("sq:", 0) != 0) continue;
        ++interior;
        CHECK(grid.skeleton->degree(v) == 4);
        Graph l = link(grid, v);
        CHECK(l.num_vertices() == 4);
        CHECK(l.num_edges() == 4);
        CHECK(l.is_connected());
        for (int n = 0; n < 4; ++n) CHECK(l.degree(n) == 2);
    }
    CHECK(interior == 16);
}

TEST_CASE("Wise complex: counts, curvature, and subdivision valences") {
    SquaredComplex k = wise_complex();
    CHECK(k.skeleton->num_vertices() == 1);
    CHECK(k.skeleton->num_edges() == 5);
    CHECK(k.num_squares() == 6);
    CHECK(k.euler_characteristic() == 2);
    CHECK(is_npc(k).npc);

    Graph l = link(k, 0);
    CHECK(l.num_vertices() == 10);  // one node per dart
    CHECK(l.num_edges() == 24);     // four corners per square

    SquaredComplex sub = hash_subdivide(k);
    CHECK(sub.skeleton->num_vertices() == 117);
    CHECK(sub.skeleton->num_edges() == 265);
    CHECK(sub.num_squares() == 150);
    CHECK(sub.euler_characteristic() == 2);
    CHECK(sub.skeleton->is_connected());

    // valences by provenance: original 10, edge points 6 or 8, grid interior 4
    for (int v = 0; v < sub.skeleton->num_vertices(); ++v) {
        const std::string& lab = sub.skeleton->vertex(v).label;
        int deg = sub.skeleton->degree(v);
        if (lab.rfind("sq:", 0) == 0)
            CHECK(deg == 4);
        else if (lab.rfind("edge:", 0) == 0)
            CHECK((deg == 6 || deg == 8));
        else
            CHECK(deg == 10);
    }
}

TEST_CASE("subdivision recovery and circuit classification on the Wise complex") {
    SquaredComplex k = wise_complex();
    CHECK(check_square_recovery(k));
    CircuitTypeCounts counts = classify_4circuits(hash_subdivide(k));
    CHECK(counts.type1 == 150);
    CHECK(counts.type2 == 0);
    CHECK(counts.type3 == 0);
}

TEST_CASE("classification on a tree is empty") {
    auto p4 = testutil::path(4);
    SquaredComplex k = square_completion(p4);
    CircuitTypeCounts counts = classify_4circuits(k);
    CHECK(counts.type1 == 0);
    CHECK(counts.type2 == 0);
    CHECK(counts.type3 == 0);
}

TEST_CASE("degenerate gluings are caught by the link condition") {
    // non-reduced attaching circuit -> loop in the link
    SquaredComplex loops = two_loop_complex({"efFE"});
    NpcReport r1 = is_npc(loops);
    CHECK(!r1.npc);
    CHECK(r1.witness.find("loop") != std::string::npos);

    // two squares inducing parallel link arcs (a 2-cycle)
    SquaredComplex doubled = two_loop_complex({"efEF", "efEf"});
    NpcReport r2 = is_npc(doubled);
    CHECK(!r2.npc);
    CHECK(r2.witness.find("parallel") != std::string::npos);

    // the 2-cycle shows up as type-3 circuits after subdivision, and the
    // subdivision is no longer recovered by square completion
    CircuitTypeCounts counts = classify_4circuits(hash_subdivide(doubled));
    CHECK(counts.type1 == 50);
    CHECK(counts.type3 > 0);
    CHECK(!check_square_recovery(doubled));
}

TEST_CASE("Euler characteristic and components survive subdivision") {
    SquaredComplex k = two_loop_complex({"efEF"});
    SquaredComplex sub = hash_subdivide(k);
    CHECK(sub.euler_characteristic() == k.euler_characteristic());
    CHECK(sub.skeleton->num_components() == k.skeleton->num_components());
}

TEST_CASE("leafed barycentric subdivision preserves automorphisms") {
    auto single = std::make_shared<Graph>();
    single->add_vertex("v");
    Graph lb0 = leaf_barycentric(*single);
    CHECK(lb0.num_vertices() == 2);
    CHECK(lb0.num_edges() == 1);

    auto c3 = testutil::cycle(3);
    Graph lb3 = leaf_barycentric(*c3);
    CHECK(lb3.num_vertices() == 9);  // hexagon plus three leaves
    CHECK(lb3.num_edges() == 9);

    for (GraphPtr gp : {testutil::cycle(3), testutil::cycle(4), testutil::path(3),
                        testutil::rose(2)}) {
        auto lbp = std::make_shared<Graph>(leaf_barycentric(*gp));
        CHECK(automorphisms(lbp).size() == automorphisms(gp).size());
    }
}
