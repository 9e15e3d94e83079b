#include "covlab/covering.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "covlab/refinement.hpp"

namespace covlab {

namespace {

// Dart processing order for backtracking: BFS from vertex 0 so each dart's
// origin is determined when reached.
std::vector<int> bfs_dart_order(const Graph& g) {
    std::vector<int> order;
    std::vector<char> vseen(g.num_vertices(), 0), dseen(g.num_darts(), 0);
    std::deque<int> q;
    if (g.num_vertices() == 0) return order;
    q.push_back(0);
    vseen[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int d : g.star(v)) {
            if (dseen[d]) continue;
            dseen[d] = 1;
            dseen[Graph::reversal(d)] = 1;
            order.push_back(d);
            int w = g.terminus(d);
            if (!vseen[w]) {
                vseen[w] = 1;
                q.push_back(w);
            }
        }
    }
    return order;
}

struct CoveringSearch {
    const Graph& top;
    const Graph& base;
    GraphPtr topp, basep;
    std::size_t limit;
    bool first_only;
    std::vector<int> order;
    std::vector<Morphism> out;
    std::vector<int> vmap, dmap;

    bool degree_ok(int v, int w) const {
        return top.degree(v) == base.degree(w) &&
               top.degree(v, EdgeKind::dashed) == base.degree(w, EdgeKind::dashed);
    }

    // Assign dmap[d]=c (and the reversal), propagating the terminus vertex.
    // Returns false without side effects if inconsistent.
    bool try_assign(int d, int c, std::vector<std::pair<int, int>>& undo_v) {
        int tv = top.terminus(d), tc = base.terminus(c);
        // the reversal lands in the star at tv: keep that star injective too
        for (int d2 : top.star(tv))
            if (dmap[d2] == Graph::reversal(c)) return false;
        if (vmap[tv] < 0) {
            if (!degree_ok(tv, tc)) return false;
            vmap[tv] = tc;
            undo_v.push_back({tv, -1});
        } else if (vmap[tv] != tc) {
            return false;
        }
        dmap[d] = c;
        dmap[Graph::reversal(d)] = Graph::reversal(c);
        return true;
    }

    bool used_in_star(int d, int c) const {
        for (int d2 : top.star(top.origin(d)))
            if (d2 != d && dmap[d2] == c) return true;
        return false;
    }

    bool rec(std::size_t i) {
        if (i == order.size()) {
            Morphism m;
            m.src = topp;
            m.dst = basep;
            m.vmap = vmap;
            m.dmap = dmap;
            if (out.size() >= limit)
                throw std::length_error("covering enumeration limit exceeded");
            out.push_back(std::move(m));
            return first_only;
        }
        int d = order[i];
        if (dmap[d] >= 0) return rec(i + 1);  // forced earlier by reversal
        int v = top.origin(d);
        for (int c : base.star(vmap[v])) {
            if (base.kind(c) != top.kind(d)) continue;
            if (used_in_star(d, c)) continue;
            std::vector<std::pair<int, int>> undo_v;
            if (!try_assign(d, c, undo_v)) continue;
            bool done = rec(i + 1);
            dmap[d] = dmap[Graph::reversal(d)] = -1;
            for (auto& [tv, _] : undo_v) vmap[tv] = -1;
            if (done) return true;
        }
        return false;
    }
};

std::vector<Morphism> covering_morphisms(GraphPtr top, GraphPtr base, std::size_t limit,
                                         bool first_only) {
    if (!top->is_connected())
        throw std::invalid_argument("enumerate_coverings: top must be connected");
    CoveringSearch s{*top, *base, top, base, limit, first_only, bfs_dart_order(*top), {}, {}, {}};
    s.vmap.assign(top->num_vertices(), -1);
    s.dmap.assign(top->num_darts(), -1);
    if (top->num_vertices() == 0) return {};
    for (int w = 0; w < base->num_vertices(); ++w) {
        if (!s.degree_ok(0, w)) continue;
        s.vmap[0] = w;
        bool done = s.rec(0);
        s.vmap[0] = -1;
        if (done) break;
    }
    return std::move(s.out);
}

}  // namespace

std::optional<CoveringMap> verify_covering(const Morphism& f, std::string* witness) {
    std::string why;
    if (!f.valid(&why)) {
        if (witness) *witness = "not a morphism: " + why;
        return std::nullopt;
    }
    const Graph& a = *f.src;
    const Graph& b = *f.dst;
    for (int v = 0; v < a.num_vertices(); ++v) {
        int w = f.vmap[v];
        if (a.degree(v) != b.degree(w)) {
            if (witness)
                *witness = "star not bijective at vertex " + a.vertex(v).id +
                           " (degree mismatch with " + b.vertex(w).id + ")";
            return std::nullopt;
        }
        for (int d1 : a.star(v))
            for (int d2 : a.star(v))
                if (d1 < d2 && f.dmap[d1] == f.dmap[d2]) {
                    if (witness)
                        *witness = "star not injective at vertex " + a.vertex(v).id +
                                   ": darts " + a.dart_id(d1) + ", " + a.dart_id(d2);
                    return std::nullopt;
                }
    }
    std::vector<int> fiber(b.num_vertices(), 0);
    for (int v = 0; v < a.num_vertices(); ++v) fiber[f.vmap[v]]++;
    int deg = fiber.empty() ? 0 : fiber[0];
    for (int w = 0; w < b.num_vertices(); ++w)
        if (fiber[w] != deg) {
            if (witness)
                *witness = "non-uniform fibers: vertex " + b.vertex(w).id + " has fiber " +
                           std::to_string(fiber[w]) + " vs " + std::to_string(deg);
            return std::nullopt;
        }
    if (deg == 0) {
        if (witness) *witness = "empty source";
        return std::nullopt;
    }
    return CoveringMap{f, deg};
}

std::vector<CoveringMap> enumerate_coverings(GraphPtr top, GraphPtr base, std::size_t limit) {
    std::vector<CoveringMap> out;
    for (Morphism& m : covering_morphisms(top, base, limit, false)) {
        auto c = verify_covering(m);
        if (c) out.push_back(*c);  // star-bijective by construction; fibers may reject
    }
    return out;
}

namespace {

// phi: c1.total -> c2.total with c2.map ∘ phi = c1.map.  Forced propagation
// from the image of vertex 0.
std::optional<Morphism> cover_isomorphism_impl(const CoveringMap& c1, const CoveringMap& c2) {
    const Graph& a = *c1.f.src;
    const Graph& g2 = *c2.f.src;
    if (a.num_vertices() != g2.num_vertices() || a.num_edges() != g2.num_edges())
        return std::nullopt;
    for (int w0 = 0; w0 < g2.num_vertices(); ++w0) {
        if (c2.f.vmap[w0] != c1.f.vmap[0]) continue;
        std::vector<int> vmap(a.num_vertices(), -1), dmap(a.num_darts(), -1);
        vmap[0] = w0;
        bool ok = true;
        std::deque<int> q{0};
        std::vector<char> seen(a.num_vertices(), 0);
        seen[0] = 1;
        while (ok && !q.empty()) {
            int v = q.front();
            q.pop_front();
            int w = vmap[v];
            if (a.degree(v) != g2.degree(w)) {
                ok = false;
                break;
            }
            for (int d : a.star(v)) {
                // unique dart at w with the same base image
                int img = -1;
                for (int e : g2.star(w))
                    if (c2.f.dmap[e] == c1.f.dmap[d]) {
                        if (img >= 0) { ok = false; }
                        img = e;
                    }
                if (img < 0) {
                    ok = false;
                    break;
                }
                if (dmap[d] >= 0 && dmap[d] != img) {
                    ok = false;
                    break;
                }
                dmap[d] = img;
                dmap[Graph::reversal(d)] = Graph::reversal(img);
                int tv = a.terminus(d), tw = g2.terminus(img);
                if (vmap[tv] < 0) {
                    vmap[tv] = tw;
                    if (!seen[tv]) {
                        seen[tv] = 1;
                        q.push_back(tv);
                    }
                } else if (vmap[tv] != tw) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        Morphism m;
        m.src = c1.f.src;
        m.dst = c2.f.src;
        m.vmap = std::move(vmap);
        m.dmap = std::move(dmap);
        if (!m.valid() || !m.is_bijective()) continue;
        return m;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> all_permutations(int d) {
    std::vector<int> p(d);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

std::vector<Cover> enumerate_covers(GraphPtr base, int d, std::size_t limit) {
    if (!base->is_connected())
        throw std::invalid_argument("enumerate_covers: base must be connected");
    if (d < 1) throw std::invalid_argument("enumerate_covers: degree must be positive");
    const Graph& b = *base;
    // BFS spanning tree
    std::vector<char> tree_edge(b.num_edges(), 0), vseen(b.num_vertices(), 0);
    std::deque<int> q{0};
    vseen[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int dart : b.star(v)) {
            int w = b.terminus(dart);
            if (!vseen[w]) {
                vseen[w] = 1;
                tree_edge[Graph::edge_of(dart)] = 1;
                q.push_back(w);
            }
        }
    }
    std::vector<int> free_edges;
    for (int e = 0; e < b.num_edges(); ++e)
        if (!tree_edge[e]) free_edges.push_back(e);

    auto perms = all_permutations(d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < free_edges.size(); ++i) {
        total *= perms.size();
        if (total > limit) throw std::length_error("enumerate_covers: voltage space exceeds limit");
    }

    std::vector<Cover> out;
    std::vector<int> assign(free_edges.size(), 0);  // index into perms per free edge
    for (;;) {
        // Conjugation dedup: keep only the lexicographically least assignment
        // in its simultaneous-conjugacy orbit.
        bool minimal = true;
        for (const auto& pi : perms) {
            bool less = false, greater = false;
            for (std::size_t i = 0; i < assign.size() && !less && !greater; ++i) {
                const auto& sigma = perms[assign[i]];
                std::vector<int> c(d);
                for (int x = 0; x < d; ++x) c[pi[x]] = pi[sigma[x]];
                if (c < sigma) less = true;
                else if (c > sigma) greater = true;
            }
            if (less) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            // Build the cover.
            auto total_g = std::make_shared<Graph>();
            for (int i = 0; i < d; ++i)
                for (int v = 0; v < b.num_vertices(); ++v)
                    total_g->add_vertex(b.vertex(v).id + "#" + std::to_string(i),
                                        b.vertex(v).label);
            auto vid = [&](int v, int i) { return i * b.num_vertices() + v; };
            std::vector<int> volt_index(b.num_edges(), -1);
            for (std::size_t i = 0; i < free_edges.size(); ++i) volt_index[free_edges[i]] = assign[i];
            Morphism f;
            f.src = total_g;  // filled below; add edges first
            for (int e = 0; e < b.num_edges(); ++e) {
                const Edge& ed = b.edge(e);
                for (int i = 0; i < d; ++i) {
                    int j = volt_index[e] < 0 ? i : perms[volt_index[e]][i];
                    total_g->add_edge(ed.id + "#" + std::to_string(i), vid(ed.u, i),
                                      vid(ed.v, j), ed.kind, ed.label);
                }
            }
            if (total_g->is_connected()) {
                f.dst = base;
                f.vmap.resize(total_g->num_vertices());
                f.dmap.resize(total_g->num_darts());
                for (int i = 0; i < d; ++i)
                    for (int v = 0; v < b.num_vertices(); ++v) f.vmap[vid(v, i)] = v;
                for (int e2 = 0; e2 < total_g->num_edges(); ++e2) {
                    int e = e2 / d;  // edges added base-edge-major
                    f.dmap[2 * e2] = 2 * e;
                    f.dmap[2 * e2 + 1] = 2 * e + 1;
                }
                auto cm = verify_covering(f);
                if (!cm) throw std::logic_error("enumerate_covers: constructed map not a covering");
                // isomorphism-of-covers safety net
                bool dup = false;
                for (const Cover& c : out)
                    if (cover_isomorphism_impl(c.map, cm.value())) {
                        dup = true;
                        break;
                    }
                if (!dup) out.push_back(Cover{total_g, *cm});
            }
        }
        // next assignment
        std::size_t i = 0;
        for (; i < assign.size(); ++i) {
            if (++assign[i] < static_cast<int>(perms.size())) break;
            assign[i] = 0;
        }
        if (i == assign.size()) break;
        if (assign.empty()) break;
    }
    return out;
}

DeckGroup deck_group(const CoveringMap& f) {
    const Graph& a = *f.f.src;
    if (!a.is_connected()) throw std::invalid_argument("deck_group: source must be connected");
    DeckGroup g;
    g.cover = f;
    // Deck elements are cover-isomorphisms from f to itself.
    int base_v = f.f.vmap[0];
    for (int w0 = 0; w0 < a.num_vertices(); ++w0) {
        if (f.f.vmap[w0] != base_v) continue;
        // forced propagation with prescribed image of vertex 0
        std::vector<int> vmap(a.num_vertices(), -1), dmap(a.num_darts(), -1);
        vmap[0] = w0;
        bool ok = true;
        std::deque<int> q{0};
        while (ok && !q.empty()) {
            int v = q.front();
            q.pop_front();
            int w = vmap[v];
            for (int d : a.star(v)) {
                int img = -1;
                for (int e : a.star(w))
                    if (f.f.dmap[e] == f.f.dmap[d]) {
                        img = e;
                        break;
                    }
                if (img < 0) {
                    ok = false;
                    break;
                }
                if (dmap[d] >= 0) {
                    if (dmap[d] != img) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                dmap[d] = img;
                dmap[Graph::reversal(d)] = Graph::reversal(img);
                int tv = a.terminus(d), tw = a.terminus(img);
                if (vmap[tv] < 0) {
                    vmap[tv] = tw;
                    q.push_back(tv);
                } else if (vmap[tv] != tw) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        Morphism m;
        m.src = f.f.src;
        m.dst = f.f.src;
        m.vmap = std::move(vmap);
        m.dmap = std::move(dmap);
        if (!m.valid() || !m.is_bijective()) continue;
        Morphism check = compose(f.f, m);
        if (!same_map(check, f.f)) continue;
        g.elements.push_back(std::move(m));
    }
    g.is_regular = static_cast<int>(g.elements.size()) == f.degree;
    return g;
}

FiberProduct fiber_product(const CoveringMap& f1, const CoveringMap& f2) {
    if (f1.f.dst.get() != f2.f.dst.get())
        throw std::invalid_argument("fiber_product: targets differ");
    const Graph& a = *f1.f.src;
    const Graph& b = *f2.f.src;
    auto total = std::make_shared<Graph>();
    std::vector<std::vector<int>> vidx(a.num_vertices(), std::vector<int>(b.num_vertices(), -1));
    for (int v = 0; v < a.num_vertices(); ++v)
        for (int w = 0; w < b.num_vertices(); ++w)
            if (f1.f.vmap[v] == f2.f.vmap[w])
                vidx[v][w] = total->add_vertex(a.vertex(v).id + "*" + b.vertex(w).id);
    Morphism p1, p2;
    p1.src = p2.src = total;
    p1.dst = f1.f.src;
    p2.dst = f2.f.src;
    std::vector<std::pair<int, int>> dart_pairs;  // by edge: (d1,d2) with d1 even
    for (int d1 = 0; d1 < a.num_darts(); d1 += 2)
        for (int d2 = 0; d2 < b.num_darts(); ++d2)
            if (f1.f.dmap[d1] == f2.f.dmap[d2]) {
                int u = total->add_edge(a.dart_id(d1) + "*" + b.dart_id(d2),
                                        vidx[a.origin(d1)][b.origin(d2)],
                                        vidx[a.terminus(d1)][b.terminus(d2)], a.kind(d1));
                (void)u;
                dart_pairs.push_back({d1, d2});
            }
    p1.vmap.resize(total->num_vertices());
    p2.vmap.resize(total->num_vertices());
    for (int v = 0; v < a.num_vertices(); ++v)
        for (int w = 0; w < b.num_vertices(); ++w)
            if (vidx[v][w] >= 0) {
                p1.vmap[vidx[v][w]] = v;
                p2.vmap[vidx[v][w]] = w;
            }
    p1.dmap.resize(total->num_darts());
    p2.dmap.resize(total->num_darts());
    for (std::size_t e = 0; e < dart_pairs.size(); ++e) {
        auto [d1, d2] = dart_pairs[e];
        p1.dmap[2 * e] = d1;
        p1.dmap[2 * e + 1] = Graph::reversal(d1);
        p2.dmap[2 * e] = d2;
        p2.dmap[2 * e + 1] = Graph::reversal(d2);
    }
    return FiberProduct{total, std::move(p1), std::move(p2)};
}

std::optional<CommonCover> find_common_cover(GraphPtr g1, GraphPtr g2, int d_max) {
    auto r1 = degree_refinement(*g1);
    auto r2 = degree_refinement(*g2);
    if (!(r1 == r2)) return std::nullopt;
    for (int d = 1; d <= d_max; ++d) {
        for (const Cover& c : enumerate_covers(g1, d)) {
            auto down = covering_morphisms(c.total, g2, 1u << 20, /*first_only=*/true);
            if (down.empty()) continue;
            auto cm = verify_covering(down.front());
            if (!cm) continue;
            return CommonCover{c.total, c.map, *cm};
        }
    }
    return std::nullopt;
}

}  // namespace covlab
