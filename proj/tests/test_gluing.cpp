#include <doctest.h>

#include <random>

#include <json.hpp>

#include "covlab/gluing.hpp"
#include "covlab/iso.hpp"

using namespace covlab;

namespace {

// Degree-2 cover of x2: doubled solid part, every dashed edge crossing sheets.
CoveringMap doubled_x2_cover(const PieceTemplate& t) {
    const Graph& x2 = *t.x2;
    int n = x2.num_vertices();
    auto g = std::make_shared<Graph>();
    for (int s = 0; s < 2; ++s)
        for (const Vertex& v : x2.vertices())
            g->add_vertex(std::to_string(s) + "." + v.id);
    Morphism f;
    f.dst = t.x2;
    for (int s = 0; s < 2; ++s)
        for (int e = 0; e < x2.num_edges(); ++e) {
            const Edge& ed = x2.edge(e);
            int other = ed.kind == EdgeKind::dashed ? 1 - s : s;
            g->add_edge(std::to_string(s) + "." + ed.id, s * n + ed.u,
                        other * n + ed.v, ed.kind);
            f.dmap.push_back(2 * e);
            f.dmap.push_back(2 * e + 1);
        }
    f.src = g;
    for (int s = 0; s < 2; ++s)
        for (int v = 0; v < n; ++v) f.vmap.push_back(v);
    auto cm = verify_covering(f);
    REQUIRE(cm);
    return *cm;
}

Weights combine(const Weights& a, long long ca, const Weights& b, long long cb) {
    Weights out = a;
    for (auto& r : out.omega) r *= ca;
    for (auto& [k, r] : out.nu) r *= ca;
    for (std::size_t c = 0; c < b.omega.size(); ++c) out.omega[c] += Rat(cb) * b.omega[c];
    for (const auto& [k, r] : b.nu) out.nu[k] += Rat(cb) * r;
    return out;
}

}  // namespace

TEST_CASE("gluing system against x2: structure, feasibility, canonical assembly") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 2);
    CHECK(sys.covers.size() == 32);  // the solid self-coverings of the piece
    CHECK(sys.num_classes() == 2);   // identity and the outer swap
    CHECK(sys.stabilization_radius == 2);
    CHECK(!sys.degenerate);
    CHECK(sys.nu_vars.size() == 144);

    auto sol = solve_system(sys);
    CHECK(!sol.only_zero);

    // the defining cover of x2 by itself gives the unit solution
    auto idc = verify_covering(identity(t.x2));
    REQUIRE(idc);
    Weights w = weights_from_cover(*idc, sys);
    Rat total = 0;
    for (const Rat& r : w.omega) total += r;
    CHECK(total == 1);
    CHECK(check_weights(sys, w));

    AssembledCover ac = assemble_cover(sys, w);
    CHECK(ac.num_copies == 1);
    CHECK((bool)isomorphic(ac.yhat, t.x2));
    IntermediateReport rep = verify_intermediate(ac, t, 1);
    CHECK(rep.covering_ok);
    CHECK(rep.truncation_ok);
    CHECK(rep.interior_checked > 0);
    CHECK(rep.solid_components_ok);
    CHECK(rep.z_covers_quotient);
    CHECK(rep.all_ok());

    // round trip
    Weights back = weights_from_cover(ac, sys);
    CHECK(back.omega == w.omega);
    CHECK(back.nu == w.nu);

    // interchange format: every face type names candidates on both sides
    auto j = nlohmann::json::parse(gluing_system_json(sys));
    CHECK(j["pieces"].size() == 2);
    CHECK(j["faces"].size() > 0);
    for (const auto& f : j["faces"]) {
        CHECK(!f["left"].empty());
        CHECK(!f["right"].empty());
    }
    auto jw = nlohmann::json::parse(weights_json(sys, w));
    CHECK(jw["omega"]["P0"] == "1");
}

TEST_CASE("a doubled cover of x2 types to weight two") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 2);
    CoveringMap q = doubled_x2_cover(t);
    Weights w = weights_from_cover(q, sys);
    Rat total = 0;
    for (const Rat& r : w.omega) total += r;
    CHECK(total == 2);
    CHECK(check_weights(sys, w));
    AssembledCover ac = assemble_cover(sys, w);
    CHECK(ac.num_copies == 2);
    CHECK(!isomorphic(ac.yhat, t.x2));
    CHECK(verify_intermediate(ac, t, 1).all_ok());
}

TEST_CASE("integer_scale clears denominators and preserves the equations") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 2);
    auto idc = verify_covering(identity(t.x2));
    Weights w = weights_from_cover(*idc, sys);
    Weights thirds = w;
    for (auto& r : thirds.omega) r /= 3;
    for (auto& [k, r] : thirds.nu) r /= 3;
    CHECK(check_weights(sys, thirds));
    Weights scaled = integer_scale(thirds);
    CHECK(scaled.is_integral());
    CHECK(scaled.omega == w.omega);
    CHECK(check_weights(sys, scaled));

    Weights mixed;
    mixed.omega = {Rat(1) / 2, Rat(1) / 3};
    Weights ms = integer_scale(mixed);
    CHECK(ms.omega == std::vector<Rat>{Rat(3), Rat(2)});
}

TEST_CASE("gluing system against x1 is only-zero, like the counting certificate") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 1);
    CHECK(sys.covers.size() == 192);
    CHECK(sys.num_classes() == 4);
    CHECK(sys.stabilization_radius == 2);
    CHECK(solve_system(sys).only_zero);
    CHECK(counting_certificate(CountingScenario::sec5).only_zero);
}

TEST_CASE("gluing guards") {
    PieceTemplate t4 = sec4_template();
    CHECK_THROWS_AS(derive_gluing_system(t4, 1), std::invalid_argument);
    PieceTemplate t = sec5_template();
    CHECK_THROWS_AS(derive_gluing_system(t, 3), std::invalid_argument);

    GluingSystem sys = derive_gluing_system(t, 2);
    auto idc = verify_covering(identity(t.x2));
    Weights w = weights_from_cover(*idc, sys);
    Weights frac = w;
    frac.omega[0] /= 2;
    CHECK_THROWS_AS(assemble_cover(sys, frac), std::invalid_argument);
    Weights zero;
    zero.omega.assign(sys.num_classes(), Rat(0));
    CHECK_THROWS_AS(assemble_cover(sys, zero), std::invalid_argument);
    Weights broken = w;
    broken.nu.clear();  // omega without matching stub counts
    CHECK_THROWS_AS(assemble_cover(sys, broken), std::invalid_argument);
}

TEST_CASE("a rewired dashed edge is caught with a witness") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 2);
    auto idc = verify_covering(identity(t.x2));
    AssembledCover ac = assemble_cover(sys, weights_from_cover(*idc, sys));
    int solid_darts = 2 * ac.num_copies * t.piece->num_edges();

    AssembledCover bad1 = ac;
    bad1.psi.dmap[solid_darts] = bad1.psi.dmap[solid_darts + 2];
    IntermediateReport r1 = verify_intermediate(bad1, t, 1);
    CHECK(!r1.covering_ok);
    CHECK(!r1.witness.empty());

    AssembledCover bad2 = ac;
    bad2.chart.dmap[solid_darts] = bad2.chart.dmap[solid_darts + 2];
    IntermediateReport r2 = verify_intermediate(bad2, t, 1);
    CHECK(!r2.solid_components_ok);
    CHECK(!r2.witness.empty());
}

TEST_CASE("random feasible combinations assemble into coverings") {
    PieceTemplate t = sec5_template();
    GluingSystem sys = derive_gluing_system(t, 2);
    auto idc = verify_covering(identity(t.x2));
    Weights w1 = weights_from_cover(*idc, sys);
    Weights w2 = weights_from_cover(doubled_x2_cover(t), sys);
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coef(0, 3);
    for (int trial = 0; trial < 5; ++trial) {
        long long a = coef(rng), b = coef(rng);
        if (a + b == 0) a = 1;
        Weights w = combine(w1, a, w2, b);
        CHECK(check_weights(sys, w));
        AssembledCover ac = assemble_cover(sys, w);
        CHECK(ac.num_copies == a + 2 * b);
        CHECK((bool)verify_covering(ac.psi));
        CHECK(verify_intermediate(ac, t, 1).all_ok());
    }
}
