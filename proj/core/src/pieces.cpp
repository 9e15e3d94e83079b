#include "covlab/pieces.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "covlab/iso.hpp"
#include "covlab/linear.hpp"

namespace covlab {

namespace {

// First covering morphism piece -> base with the prescribed vertex map.
Morphism covering_with_vmap(GraphPtr piece, GraphPtr base, const std::vector<int>& vmap) {
    for (const CoveringMap& c : enumerate_coverings(piece, base))
        if (c.f.vmap == vmap) return c.f;
    throw std::logic_error("covering_with_vmap: no covering with the prescribed vertex map");
}

std::vector<int> dashed_darts_at(const Graph& g, int v) {
    std::vector<int> out;
    for (int d : g.star(v))
        if (g.kind(d) == EdgeKind::dashed) out.push_back(d);
    return out;
}

}  // namespace

PieceTemplate sec5_template() {
    PieceTemplate t;
    t.rule = AssemblyRule::normal_closure;

    // The 4-regular piece: a center, four inner vertices, four outer vertices.
    auto y = std::make_shared<Graph>();
    int c = y->add_vertex("c");
    int nw = y->add_vertex("nw"), ne = y->add_vertex("ne");
    int sw = y->add_vertex("sw"), se = y->add_vertex("se");
    int NW = y->add_vertex("NW"), NE = y->add_vertex("NE");
    int SW = y->add_vertex("SW"), SE = y->add_vertex("SE");
    auto E = [&](const char* id, int u, int v) { y->add_edge(id, u, v); };
    E("e12", c, nw);
    E("e13", c, ne);
    E("e14", c, sw);
    E("e15", c, se);
    E("e24", nw, sw);
    E("e35", ne, se);
    E("e26", nw, NW);
    E("e37", ne, NE);
    E("e48", sw, SW);
    E("e59", se, SE);
    E("e68a", NW, SW);
    E("e68b", NW, SW);
    E("e79a", NE, SE);
    E("e79b", NE, SE);
    E("e65", NW, se);
    E("e83", SW, ne);
    E("e72", NE, nw);
    E("e94", SE, sw);
    t.piece = y;

    auto y1 = std::make_shared<Graph>();
    int a = y1->add_vertex("a"), b = y1->add_vertex("b"), cc = y1->add_vertex("c");
    y1->add_edge("loopa", a, a);
    y1->add_edge("ab", a, b);
    y1->add_edge("ac", a, cc);
    y1->add_edge("bc1", b, cc);
    y1->add_edge("bc2", b, cc);
    y1->add_edge("bc3", b, cc);
    t.y1 = y1;
    t.y2 = t.piece;  // the second quotient is the piece itself

    //                 c  nw ne sw se NW NE SW SE
    t.p1 = covering_with_vmap(t.piece, t.y1, {a, a, b, a, cc, b, cc, cc, b});
    t.p2 = identity(t.piece);

    // x1: y1 plus six dashed edges (dashed degree 4 everywhere); the two b-c
    // dashed edges are the marked ("red") ones.
    auto x1 = std::make_shared<Graph>();
    for (const Vertex& v : y1->vertices()) x1->add_vertex(v.id, v.label);
    for (const Edge& e : y1->edges()) x1->add_edge(e.id, e.u, e.v, e.kind, e.label);
    x1->add_edge("dab1", a, b, EdgeKind::dashed);
    x1->add_edge("dab2", a, b, EdgeKind::dashed);
    int rbc1 = x1->add_edge("dbc1", b, cc, EdgeKind::dashed);
    int rbc2 = x1->add_edge("dbc2", b, cc, EdgeKind::dashed);
    x1->add_edge("dac1", a, cc, EdgeKind::dashed);
    x1->add_edge("dac2", a, cc, EdgeKind::dashed);
    t.x1 = x1;
    t.red_x1_edges = {rbc1, rbc2};

    // x2: the piece plus 18 dashed edges (dashed degree 4 everywhere).
    // Marked orientations: the three "green" edges run sw -> nw, the two
    // "red" ones run se -> ne (dart 2e carries the marked direction).
    auto x2 = std::make_shared<Graph>();
    for (const Vertex& v : y->vertices()) x2->add_vertex(v.id, v.label);
    for (const Edge& e : y->edges()) x2->add_edge(e.id, e.u, e.v, e.kind, e.label);
    auto D = [&](const char* id, int u, int v) {
        return x2->add_edge(id, u, v, EdgeKind::dashed);
    };
    D("d68a", NW, SW);
    D("d68b", NW, SW);
    D("d61a", NW, c);
    D("d61b", NW, c);
    D("d18a", c, SW);
    D("d18b", c, SW);
    int g1 = D("g42a", sw, nw);
    int g2 = D("g42b", sw, nw);
    int g3 = D("g42c", sw, nw);
    D("d27", nw, NE);
    D("d94", SE, sw);
    D("d73a", NE, ne);
    D("d73b", NE, ne);
    D("d59a", se, SE);
    D("d59b", se, SE);
    int r1 = D("r53a", se, ne);
    int r2 = D("r53b", se, ne);
    D("d97", SE, NE);
    t.x2 = x2;
    t.green_x2_edges = {g1, g2, g3};
    t.red_x2_edges = {r1, r2};

    t.dashed_profile.assign(9, 4);
    for (int v = 0; v < 9; ++v)
        if (x2->degree(v, EdgeKind::dashed) != 4)
            throw std::logic_error("sec5_template: dashed degree mismatch");

    // Exceptional set: every orientation of (red x1 edge, red x2 edge).
    for (int e1 : t.red_x1_edges)
        for (int e2 : t.red_x2_edges)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2)
                    t.exceptional.push_back({2 * e1 + s1, 2 * e2 + s2});

    // Orange darts: the dashed x1 darts leaving the central image vertex a.
    for (int d : dashed_darts_at(*x1, a)) t.orange_x1_darts.push_back(d);
    return t;
}

PieceTemplate sec4_template() {
    PieceTemplate t;
    t.rule = AssemblyRule::pattern;

    auto y = std::make_shared<Graph>();
    int v1 = y->add_vertex("1");
    int v2a = y->add_vertex("2a"), v2b = y->add_vertex("2b");
    int v3a = y->add_vertex("3a"), v3b = y->add_vertex("3b");
    int v4a = y->add_vertex("4a"), v4b = y->add_vertex("4b");
    int v5 = y->add_vertex("5"), v6 = y->add_vertex("6");
    auto E = [&](const char* id, int u, int v) { y->add_edge(id, u, v); };
    E("e3a3b.1", v3a, v3b);
    E("e3a3b.2", v3a, v3b);
    E("e3a5", v3a, v5);
    E("e3b5", v3b, v5);
    E("e56.1", v5, v6);
    E("e56.2", v5, v6);
    E("e3a2b", v3a, v2b);
    E("e3b2a", v3b, v2a);
    E("e64a", v6, v4a);
    E("e64b", v6, v4b);
    E("e4a4b", v4a, v4b);
    E("e4a2b.1", v4a, v2b);
    E("e4a2b.2", v4a, v2b);
    E("e4b2a.1", v4b, v2a);
    E("e4b2a.2", v4b, v2a);
    E("e12b", v1, v2b);
    E("e12a", v1, v2a);
    E("loop1", v1, v1);
    t.piece = y;

    auto y1 = std::make_shared<Graph>();
    int A = y1->add_vertex("A"), B = y1->add_vertex("B"), C = y1->add_vertex("C");
    y1->add_edge("AB1", A, B);
    y1->add_edge("AB2", A, B);
    y1->add_edge("AB3", A, B);
    y1->add_edge("AC", A, C);
    y1->add_edge("BC", B, C);
    y1->add_edge("loopC", C, C);
    t.y1 = y1;

    auto y2 = std::make_shared<Graph>();
    int U = y2->add_vertex("U"), M = y2->add_vertex("M"), Dv = y2->add_vertex("D");
    y2->add_edge("loopU", U, U);
    y2->add_edge("UM1", U, M);
    y2->add_edge("UM2", U, M);
    y2->add_edge("MD1", M, Dv);
    y2->add_edge("MD2", M, Dv);
    y2->add_edge("loopD", Dv, Dv);
    t.y2 = y2;

    //                  1  2a 2b 3a 3b 4a 4b 5  6
    t.p1 = covering_with_vmap(t.piece, t.y1, {C, A, B, A, B, A, B, C, C});
    t.p2 = covering_with_vmap(t.piece, t.y2, {U, M, M, U, U, Dv, Dv, M, Dv});

    auto x1 = std::make_shared<Graph>();
    for (const Vertex& v : y1->vertices()) x1->add_vertex(v.id, v.label);
    for (const Edge& e : y1->edges()) x1->add_edge(e.id, e.u, e.v, e.kind, e.label);
    x1->add_edge("dA", A, A, EdgeKind::dashed);
    x1->add_edge("dB", B, B, EdgeKind::dashed);
    x1->add_edge("dC", C, C, EdgeKind::dashed);
    t.x1 = x1;

    auto x2 = std::make_shared<Graph>();
    for (const Vertex& v : y2->vertices()) x2->add_vertex(v.id, v.label);
    for (const Edge& e : y2->edges()) x2->add_edge(e.id, e.u, e.v, e.kind, e.label);
    x2->add_edge("dU", U, U, EdgeKind::dashed);
    x2->add_edge("dM", M, M, EdgeKind::dashed);
    x2->add_edge("dD", Dv, Dv, EdgeKind::dashed);
    t.x2 = x2;

    t.patterns.itineraries = {{"1", "1", "6"}, {"2a"}, {"2b"}, {"3a", "4a"}, {"3b", "4b"}, {"5"}};
    t.dashed_profile.assign(9, 2);
    return t;
}

namespace {

struct PatternInfo {
    // per piece vertex: itinerary index and default phase (first occurrence)
    std::vector<int> itinerary_of;
    std::vector<int> default_phase;
    // label -> piece vertex (labels are unique in the piece)
    std::map<std::string, int> vertex_of_label;
};

PatternInfo pattern_info(const PieceTemplate& t) {
    PatternInfo info;
    int n = t.piece->num_vertices();
    info.itinerary_of.assign(n, -1);
    info.default_phase.assign(n, -1);
    for (int v = 0; v < n; ++v) info.vertex_of_label[t.piece->vertex(v).id] = v;
    for (std::size_t i = 0; i < t.patterns.itineraries.size(); ++i) {
        const auto& it = t.patterns.itineraries[i];
        for (std::size_t j = 0; j < it.size(); ++j) {
            auto found = info.vertex_of_label.find(it[j]);
            if (found == info.vertex_of_label.end())
                throw std::logic_error("pattern label without piece vertex: " + it[j]);
            int v = found->second;
            if (info.itinerary_of[v] < 0) {
                info.itinerary_of[v] = static_cast<int>(i);
                info.default_phase[v] = static_cast<int>(j);
            } else if (info.itinerary_of[v] != static_cast<int>(i)) {
                throw std::logic_error("pattern label in two itineraries: " + it[j]);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (info.itinerary_of[v] < 0)
            throw std::logic_error("piece vertex not covered by patterns: " +
                                   t.piece->vertex(v).id);
    return info;
}

}  // namespace

Truncation build_truncation(const PieceTemplate& t, int R, std::size_t max_copies) {
    Truncation tr;
    tr.tmpl = &t;
    tr.radius = R;
    tr.piece_n = t.piece->num_vertices();
    auto g = std::make_shared<Graph>();
    const Graph& piece = *t.piece;

    auto add_copy = [&](int depth, int parent) {
        int idx = tr.num_copies++;
        tr.copy_depth.push_back(depth);
        tr.copy_parent.push_back(parent);
        for (int v = 0; v < piece.num_vertices(); ++v)
            g->add_vertex("y" + std::to_string(idx) + "." + piece.vertex(v).id);
        for (int e = 0; e < piece.num_edges(); ++e) {
            const Edge& ed = piece.edge(e);
            g->add_edge("y" + std::to_string(idx) + "." + ed.id, tr.vertex_of(idx, ed.u),
                        tr.vertex_of(idx, ed.v), ed.kind, ed.label);
            tr.dart_chart.push_back(2 * e);
            tr.dart_chart.push_back(2 * e + 1);
            tr.dashed_slot.push_back(-1);
            tr.dashed_slot.push_back(-1);
        }
        return idx;
    };

    int dashed_edge_count = 0;
    if (t.rule == AssemblyRule::normal_closure) {
        const Graph& x2 = *t.x2;
        std::vector<int> dashed;  // x2 dashed darts in order
        for (int d = 0; d < x2.num_darts(); ++d)
            if (x2.kind(d) == EdgeKind::dashed) dashed.push_back(d);
        std::vector<std::vector<char>> used;  // [copy][x2 dart]
        add_copy(0, -1);
        used.push_back(std::vector<char>(x2.num_darts(), 0));
        for (int c = 0; c < tr.num_copies; ++c) {
            if (tr.copy_depth[c] >= R) continue;
            for (int delta : dashed) {
                if (used[c][delta]) continue;
                if (static_cast<std::size_t>(tr.num_copies) >= max_copies)
                    throw std::length_error("build_truncation: copy guard exceeded");
                int c2 = add_copy(tr.copy_depth[c] + 1, c);
                used.push_back(std::vector<char>(x2.num_darts(), 0));
                used[c][delta] = 1;
                used[c2][Graph::reversal(delta)] = 1;
                g->add_edge("t" + std::to_string(dashed_edge_count++),
                            tr.vertex_of(c, x2.origin(delta)),
                            tr.vertex_of(c2, x2.terminus(delta)), EdgeKind::dashed);
                tr.dart_chart.push_back(delta);
                tr.dart_chart.push_back(Graph::reversal(delta));
                tr.dashed_slot.push_back(-1);
                tr.dashed_slot.push_back(-1);
            }
        }
    } else {
        PatternInfo info = pattern_info(t);
        std::vector<std::vector<int>> phase;               // [copy][vertex]
        std::vector<std::vector<std::array<char, 2>>> used;  // [copy][vertex][slot]
        auto new_copy = [&](int depth, int parent) {
            int idx = add_copy(depth, parent);
            phase.push_back(info.default_phase);
            used.push_back(std::vector<std::array<char, 2>>(piece.num_vertices(), {0, 0}));
            return idx;
        };
        new_copy(0, -1);
        for (int c = 0; c < tr.num_copies; ++c) {
            if (tr.copy_depth[c] >= R) continue;
            for (int v = 0; v < piece.num_vertices(); ++v) {
                const auto& itin = t.patterns.itineraries[info.itinerary_of[v]];
                int len = static_cast<int>(itin.size());
                for (int s = 0; s < 2; ++s) {
                    if (used[c][v][s]) continue;
                    if (static_cast<std::size_t>(tr.num_copies) >= max_copies)
                        throw std::length_error("build_truncation: copy guard exceeded");
                    int i = phase[c][v];
                    int j = s == 0 ? (i + 1) % len : (i - 1 + len) % len;
                    int v2 = info.vertex_of_label.at(itin[j]);
                    int c2 = new_copy(tr.copy_depth[c] + 1, c);
                    phase[c2][v2] = j;
                    used[c][v][s] = 1;
                    used[c2][v2][1 - s] = 1;
                    g->add_edge("t" + std::to_string(dashed_edge_count++),
                                tr.vertex_of(c, v), tr.vertex_of(c2, v2), EdgeKind::dashed);
                    tr.dart_chart.push_back(-1);
                    tr.dart_chart.push_back(-1);
                    tr.dashed_slot.push_back(s);
                    tr.dashed_slot.push_back(1 - s);
                }
            }
        }
    }

    tr.graph = g;
    tr.interior.assign(g->num_vertices(), 0);
    for (int v = 0; v < g->num_vertices(); ++v)
        if (tr.copy_depth[tr.copy_of(v)] < R) tr.interior[v] = 1;
    return tr;
}

ExtTable ext_table(const PieceTemplate& t, bool with_exceptional) {
    if (t.rule != AssemblyRule::normal_closure)
        throw std::invalid_argument("ext_table: template must use the normal-closure rule");
    ExtTable table;
    table.covers = enumerate_coverings(t.piece, t.y1);
    if (table.covers.empty()) throw std::logic_error("ext_table: no coverings piece -> y1");
    const Graph& x1 = *t.x1;
    const Graph& x2 = *t.x2;
    // attainable image sets per piece (= x2) vertex
    std::vector<std::set<int>> labels(t.piece->num_vertices());
    for (const CoveringMap& c : table.covers)
        for (int v = 0; v < t.piece->num_vertices(); ++v) labels[v].insert(c.f.vmap[v]);
    table.extendible.assign(x1.num_darts(), std::vector<char>(x2.num_darts(), 0));
    for (int d1 = 0; d1 < x1.num_darts(); ++d1) {
        if (x1.kind(d1) != EdgeKind::dashed) continue;
        for (int d2 = 0; d2 < x2.num_darts(); ++d2) {
            if (x2.kind(d2) != EdgeKind::dashed) continue;
            if (labels[x2.origin(d2)].count(x1.origin(d1)) &&
                labels[x2.terminus(d2)].count(x1.terminus(d1)))
                table.extendible[d1][d2] = 1;
        }
    }
    if (with_exceptional) {
        table.exceptional = t.exceptional;
        for (auto [d1, d2] : t.exceptional) table.extendible[d1][d2] = 0;
    }
    return table;
}

namespace {

// All bijections sigma: darts2 -> darts1 with every (sigma(d2), d2) pair
// extendible; optionally constrained by sigma(fix2) = fix1.  Lexicographic
// order in the image sequence; stops after `max_out` results.
std::vector<std::vector<int>> extendible_bijections(const ExtTable& table,
                                                    const std::vector<int>& darts2,
                                                    const std::vector<int>& darts1,
                                                    int fix2 = -1, int fix1 = -1,
                                                    std::size_t max_out = SIZE_MAX) {
    std::vector<std::vector<int>> out;
    if (darts2.size() != darts1.size()) return out;
    std::size_t n = darts2.size();
    std::vector<int> img(n, -1);
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (out.size() >= max_out) return true;
        if (i == n) {
            out.push_back(img);
            return out.size() >= max_out;
        }
        int d2 = darts2[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            int d1 = darts1[j];
            if (fix2 == d2 && d1 != fix1) continue;
            if (fix2 != d2 && fix2 >= 0 && d1 == fix1) continue;
            if (!table.is_extendible(d1, d2)) continue;
            used[j] = 1;
            img[i] = d1;
            if (self(self, i + 1)) {
                used[j] = 0;
                return true;
            }
            used[j] = 0;
            img[i] = -1;
        }
        return false;
    };
    rec(rec, 0);
    return out;
}

}  // namespace

LinkBijectionReport check_link_bijections(const PieceTemplate& t, const ExtTable& table) {
    LinkBijectionReport rep;
    const Graph& x1 = *t.x1;
    const Graph& x2 = *t.x2;
    for (int v = 0; v < t.piece->num_vertices(); ++v) {
        std::vector<int> darts2 = dashed_darts_at(x2, v);
        for (std::size_t pi = 0; pi < table.covers.size(); ++pi) {
            int pv = table.covers[pi].f.vmap[v];
            std::vector<int> darts1 = dashed_darts_at(x1, pv);
            // (1) some extendible bijection exists
            auto any = extendible_bijections(table, darts2, darts1, -1, -1, 1);
            if (any.empty()) {
                rep.ok1 = false;
                rep.failures.push_back({v, static_cast<int>(pi), 1, -1, -1});
            }
            // (2) every extendible pair in the links extends to a bijection
            for (int d2 : darts2)
                for (int d1 : darts1) {
                    if (!table.is_extendible(d1, d2)) continue;
                    ++rep.pairs_checked;
                    auto fixed = extendible_bijections(table, darts2, darts1, d2, d1, 1);
                    if (fixed.empty()) {
                        rep.ok2 = false;
                        rep.failures.push_back({v, static_cast<int>(pi), 2, d1, d2});
                    }
                }
        }
    }
    return rep;
}

namespace {

RadialCoverResult radial_cover_normal1(const Truncation& tr) {
    const PieceTemplate& t = *tr.tmpl;
    ExtTable table = ext_table(t);
    const Graph& x1 = *t.x1;
    const Graph& x2 = *t.x2;
    const Graph& g = *tr.graph;
    int pn = tr.piece_n;

    RadialCoverResult res;
    res.q.src = tr.graph;
    res.q.dst = t.x1;
    res.q.vmap.assign(g.num_vertices(), -1);
    res.q.dmap.assign(g.num_darts(), -1);
    res.copy_restriction.assign(tr.num_copies, -1);

    std::vector<std::vector<int>> darts2_at(pn);  // x2 dashed darts per vertex
    for (int v = 0; v < pn; ++v) darts2_at[v] = dashed_darts_at(x2, v);

    // sigma[c][x2 dart] = x1 dart image (only set for dashed darts)
    std::vector<std::vector<int>> sigma(tr.num_copies,
                                        std::vector<int>(x2.num_darts(), -1));

    // Choose maps for one copy.  Constraint: at vertex cv, sigma(cd2) = cd1.
    auto choose_for_copy = [&](int c, int cv, int cd2, int cd1) -> bool {
        for (std::size_t pi = 0; pi < table.covers.size(); ++pi) {
            const Morphism& p = table.covers[pi].f;
            if (cv >= 0 && p.vmap[cv] != x1.origin(cd1)) continue;
            bool ok = true;
            std::vector<std::vector<int>> chosen(pn);
            for (int v = 0; v < pn && ok; ++v) {
                std::vector<int> darts1 = dashed_darts_at(x1, p.vmap[v]);
                auto found = (v == cv)
                                 ? extendible_bijections(table, darts2_at[v], darts1, cd2, cd1, 1)
                                 : extendible_bijections(table, darts2_at[v], darts1, -1, -1, 1);
                if (found.empty())
                    ok = false;
                else
                    chosen[v] = found.front();
            }
            if (!ok) continue;
            res.copy_restriction[c] = static_cast<int>(pi);
            for (int v = 0; v < pn; ++v) {
                res.q.vmap[tr.vertex_of(c, v)] = p.vmap[v];
                for (std::size_t i = 0; i < darts2_at[v].size(); ++i)
                    sigma[c][darts2_at[v][i]] = chosen[v][i];
            }
            return true;
        }
        return false;
    };

    if (!choose_for_copy(0, -1, -1, -1)) {
        res.blocked_at = "basepoint copy";
        return res;
    }

    // Dashed edges in index order: each is created parent-to-child, so the
    // parent's sigma is already fixed when the edge is reached.
    res.complete = true;
    for (int e = 0; e < g.num_edges() && res.complete; ++e) {
        int d = 2 * e;
        if (g.kind(d) == EdgeKind::solid) continue;
        int cp = tr.copy_of(g.origin(d));
        int ccv = g.terminus(d);
        int cc = tr.copy_of(ccv);
        int delta = tr.dart_chart[d];
        int img = sigma[cp][delta];
        if (img < 0) throw std::logic_error("radial_cover: parent sigma missing");
        res.q.dmap[d] = img;
        res.q.dmap[d + 1] = Graph::reversal(img);
        if (!choose_for_copy(cc, tr.piece_vertex(ccv), Graph::reversal(delta),
                             Graph::reversal(img))) {
            res.complete = false;
            res.blocked_at = "copy " + std::to_string(cc) + " entered at vertex " +
                             g.vertex(ccv).id;
        }
    }
    if (res.complete) {
        // solid darts map through each copy's chosen cover
        for (int d = 0; d < g.num_darts(); ++d) {
            if (g.kind(d) != EdgeKind::solid) continue;
            const Morphism& p = table.covers[res.copy_restriction[tr.copy_of(g.origin(d))]].f;
            res.q.dmap[d] = p.dmap[tr.dart_chart[d]];
        }
    }
    return res;
}

// Star-bijectivity audit at interior vertices, straight off the graph.
void audit_interior(const Truncation& tr, RadialCoverResult& res) {
    const Graph& g = *tr.graph;
    const Graph& target = *res.q.dst;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!tr.interior[v]) continue;
        ++res.interior_vertices;
        int w = res.q.vmap[v];
        if (w < 0 || g.degree(v) != target.degree(w)) continue;
        std::set<int> images;
        bool ok = true;
        for (int d : g.star(v)) {
            int i = res.q.dmap[d];
            if (i < 0 || target.origin(i) != w || !images.insert(i).second) {
                ok = false;
                break;
            }
        }
        if (ok) ++res.star_bijective;
    }
}

RadialCoverResult radial_cover_normal2(const Truncation& tr) {
    const PieceTemplate& t = *tr.tmpl;
    RadialCoverResult res;
    res.q.src = tr.graph;
    res.q.dst = t.x2;
    res.q.vmap.resize(tr.graph->num_vertices());
    res.q.dmap.resize(tr.graph->num_darts());
    res.copy_restriction.assign(tr.num_copies, 0);
    for (int v = 0; v < tr.graph->num_vertices(); ++v) res.q.vmap[v] = tr.piece_vertex(v);
    for (int d = 0; d < tr.graph->num_darts(); ++d) res.q.dmap[d] = tr.dart_chart[d];
    res.complete = true;
    return res;
}

RadialCoverResult radial_cover_pattern(const Truncation& tr, int which) {
    const PieceTemplate& t = *tr.tmpl;
    const Graph& g = *tr.graph;
    GraphPtr target = which == 1 ? t.x1 : t.x2;
    const Morphism& p = which == 1 ? t.p1 : t.p2;

    RadialCoverResult res;
    res.q.src = tr.graph;
    res.q.dst = target;
    res.q.vmap.assign(g.num_vertices(), -1);
    res.q.dmap.assign(g.num_darts(), -1);
    res.copy_restriction.assign(tr.num_copies, 0);

    // Twisting automorphism of y2 swapping the two loop classes (identity for
    // target 1, where dashed neighbors always share their image vertex).
    Morphism tau = identity(which == 1 ? t.y1 : t.y2);
    if (which == 2) {
        bool found = false;
        for (const Morphism& a : automorphisms(t.y2)) {
            if (a.vmap == std::vector<int>{2, 1, 0}) {
                tau = a;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("radial_cover: y2 twist automorphism missing");
    }

    // Copy twists: child twist differs from the parent's when the dashed edge
    // joins vertices with different images.
    std::vector<int> twist(tr.num_copies, 0);
    for (int e = 0; e < g.num_edges(); ++e) {
        int d = 2 * e;
        if (g.kind(d) != EdgeKind::dashed) continue;
        int cp = tr.copy_of(g.origin(d)), cc = tr.copy_of(g.terminus(d));
        int lu = p.vmap[tr.piece_vertex(g.origin(d))];
        int lv = p.vmap[tr.piece_vertex(g.terminus(d))];
        twist[cc] = twist[cp] ^ (lu != lv ? 1 : 0);
    }
    if (which == 1) {
        for (int c = 0; c < tr.num_copies; ++c)
            if (twist[c]) throw std::logic_error("radial_cover: unexpected twist for target 1");
    }
    res.copy_restriction = twist;

    // Per-vertex dashed loop of the target, with a fixed orientation rule:
    // slot 0 (towards the next itinerary position) takes the positive dart.
    std::vector<int> loop_at(target->num_vertices(), -1);
    for (int e = 0; e < target->num_edges(); ++e)
        if (target->edge(e).kind == EdgeKind::dashed) {
            if (target->edge(e).u != target->edge(e).v)
                throw std::logic_error("radial_cover: pattern target dashed edge not a loop");
            loop_at[target->edge(e).u] = e;
        }

    for (int v = 0; v < g.num_vertices(); ++v) {
        int base = p.vmap[tr.piece_vertex(v)];
        res.q.vmap[v] = twist[tr.copy_of(v)] ? tau.vmap[base] : base;
    }
    for (int d = 0; d < g.num_darts(); ++d) {
        if (g.kind(d) == EdgeKind::solid) {
            int img = p.dmap[tr.dart_chart[d]];
            res.q.dmap[d] = twist[tr.copy_of(g.origin(d))] ? tau.dmap[img] : img;
        } else {
            int e = loop_at[res.q.vmap[g.origin(d)]];
            res.q.dmap[d] = 2 * e + tr.dashed_slot[d];
        }
    }
    res.complete = true;
    return res;
}

}  // namespace

RadialCoverResult radial_cover(const Truncation& tr, int which_target) {
    if (which_target != 1 && which_target != 2)
        throw std::invalid_argument("radial_cover: target must be 1 or 2");
    RadialCoverResult res;
    if (tr.tmpl->rule == AssemblyRule::normal_closure)
        res = which_target == 1 ? radial_cover_normal1(tr) : radial_cover_normal2(tr);
    else
        res = radial_cover_pattern(tr, which_target);
    if (res.complete) {
        std::string why;
        if (!res.q.valid(&why)) throw std::logic_error("radial_cover: invalid morphism: " + why);
        audit_interior(tr, res);
    }
    return res;
}

CountingCertificate decide_certificate(CountingCertificate c) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& eq : c.equations) {
        std::vector<Rat> row;
        for (long long x : eq.coeffs) row.push_back(Rat(x));
        rows.push_back(std::move(row));
    }
    auto res = nonneg_solve(rows, static_cast<int>(c.variables.size()));
    c.only_zero = res.only_zero;
    c.witness.clear();
    for (const Rat& w : res.witness) c.witness.push_back(rat_to_string(w));
    return c;
}

CountingCertificate counting_certificate(CountingScenario s) {
    CountingCertificate c;
    switch (s) {
        case CountingScenario::example_4_1:
            c.variables = {"n2", "n3", "n4"};
            c.equations = {{{1, -1, 0}, "valence-2 points match valence-3 points"},
                           {{0, 1, -1}, "valence-3 points match valence-4 points"},
                           {{0, 2, -3}, "2n3 = 3n4 from subdivided-edge incidences"}};
            break;
        case CountingScenario::sec4:
            c.variables = {"n1", "n6"};
            c.equations = {{{1, -2}, "dashed circles: itinerary 1,1,6 passes two "
                                     "1-vertices per 6-vertex"},
                           {{1, -1}, "pieces: each copy of the piece has one 1-vertex "
                                     "and one 6-vertex"}};
            break;
        case CountingScenario::sec5:
            c.variables = {"L", "R"};
            c.equations = {{{3, -2}, "green darts with marked image, counted at both ends"},
                           {{2, -2}, "red darts with marked image, counted at both ends"}};
            break;
    }
    return decide_certificate(std::move(c));
}

CountingCertificate derive_sec5_equations(const PieceTemplate& t) {
    if (t.rule != AssemblyRule::normal_closure)
        throw std::invalid_argument("derive_sec5_equations: wrong template");
    ExtTable table = ext_table(t);
    const Graph& x1 = *t.x1;
    const Graph& x2 = *t.x2;
    std::set<int> orange(t.orange_x1_darts.begin(), t.orange_x1_darts.end());

    // Triangle dichotomy: every cover sends the whole left or right inner
    // triangle to the central image vertex.
    int center_img = table.covers.front().f.vmap[0];
    std::vector<int> side(table.covers.size());  // 0 = left, 1 = right
    for (std::size_t pi = 0; pi < table.covers.size(); ++pi) {
        const auto& vm = table.covers[pi].f.vmap;
        bool left = vm[1] == center_img && vm[3] == center_img;
        bool right = vm[2] == center_img && vm[4] == center_img;
        if (left == right)
            throw std::logic_error("derive_sec5_equations: triangle dichotomy violated");
        side[pi] = right ? 1 : 0;
    }

    CountingCertificate c;
    c.variables = {"L", "R"};
    struct Colored {
        const std::vector<int>* edges;
        const char* name;
    };
    for (Colored col : {Colored{&t.green_x2_edges, "green"}, Colored{&t.red_x2_edges, "red"}}) {
        int vo = x2.origin(2 * col.edges->front());
        int vt = x2.terminus(2 * col.edges->front());
        for (int e : *col.edges)
            if (x2.origin(2 * e) != vo || x2.terminus(2 * e) != vt)
                throw std::logic_error("derive_sec5_equations: colored edges not parallel");
        // counts per side: [side][0=origin-end contribution, 1=terminus-end]
        int counts[2][2] = {{-1, -1}, {-1, -1}};
        for (std::size_t pi = 0; pi < table.covers.size(); ++pi) {
            const Morphism& p = table.covers[pi].f;
            for (int end = 0; end < 2; ++end) {
                int v = end == 0 ? vo : vt;
                std::vector<int> darts2 = dashed_darts_at(x2, v);
                std::vector<int> darts1 = dashed_darts_at(x1, p.vmap[v]);
                auto sigmas = extendible_bijections(table, darts2, darts1);
                if (sigmas.empty())
                    throw std::logic_error("derive_sec5_equations: no extendible bijection");
                int common = -1;
                for (const auto& img : sigmas) {
                    int cnt = 0;
                    for (int e : *col.edges) {
                        int delta = end == 0 ? 2 * e : 2 * e + 1;
                        // image of the marked dart 2e: directly sigma at the
                        // origin end, reversed sigma at the terminus end
                        for (std::size_t i = 0; i < darts2.size(); ++i)
                            if (darts2[i] == delta) {
                                int image = end == 0 ? img[i] : Graph::reversal(img[i]);
                                if (orange.count(image)) ++cnt;
                            }
                    }
                    if (common < 0)
                        common = cnt;
                    else if (common != cnt)
                        throw std::logic_error(
                            "derive_sec5_equations: count varies with the bijection");
                }
                if (counts[side[pi]][end] < 0)
                    counts[side[pi]][end] = common;
                else if (counts[side[pi]][end] != common)
                    throw std::logic_error(
                        "derive_sec5_equations: count varies within a side class");
            }
        }
        CountingCertificate::Equation eq;
        eq.coeffs = {counts[0][0] - counts[0][1], counts[1][0] - counts[1][1]};
        eq.tag = std::string(col.name) + " darts with marked image: origin-end counts (L=" +
                 std::to_string(counts[0][0]) + ",R=" + std::to_string(counts[1][0]) +
                 ") equal terminus-end counts (L=" + std::to_string(counts[0][1]) +
                 ",R=" + std::to_string(counts[1][1]) + ")";
        c.equations.push_back(std::move(eq));
    }
    return decide_certificate(std::move(c));
}

}  // namespace covlab
