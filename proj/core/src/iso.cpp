#include "covlab/iso.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "covlab/refinement.hpp"

namespace covlab {

namespace {

// Joint stable partition: classes computed on the disjoint union so ids are
// comparable across the two graphs.
std::pair<std::vector<int>, std::vector<int>> joint_classes(const Graph& a, const Graph& b) {
    Graph u;
    for (const Vertex& v : a.vertices()) u.add_vertex("A." + v.id, v.label);
    for (const Vertex& v : b.vertices()) u.add_vertex("B." + v.id, v.label);
    int off = a.num_vertices();
    for (const Edge& e : a.edges()) u.add_edge("A." + e.id, e.u, e.v, e.kind, e.label);
    for (const Edge& e : b.edges()) u.add_edge("B." + e.id, e.u + off, e.v + off, e.kind, e.label);
    std::vector<int> cls = stable_partition(u);
    std::vector<int> ca(cls.begin(), cls.begin() + off);
    std::vector<int> cb(cls.begin() + off, cls.end());
    return {ca, cb};
}

// Multiset of (kind, label) over edges joining u and v (u != v), or loops at
// u when u == v.
std::multiset<std::pair<int, std::string>> pair_profile(const Graph& g, int u, int v) {
    std::multiset<std::pair<int, std::string>> out;
    for (const Edge& e : g.edges()) {
        bool hit = (u == v) ? (e.u == u && e.v == u)
                            : ((e.u == u && e.v == v) || (e.u == v && e.v == u));
        if (hit) out.insert({static_cast<int>(e.kind), e.label});
    }
    return out;
}

struct IsoSearch {
    const Graph& a;
    const Graph& b;
    GraphPtr ap, bp;
    std::vector<int> ca, cb;
    std::size_t limit;
    bool first_only;
    std::vector<Morphism> out;

    std::vector<int> vmap;       // a-vertex -> b-vertex, -1 unset
    std::vector<char> used;      // b-vertex used

    bool compatible(int v, int w) const {
        if (ca[v] != cb[w]) return false;
        for (int u = 0; u < a.num_vertices(); ++u) {
            if (vmap[u] < 0 || u == v) continue;
            if (pair_profile(a, v, u) != pair_profile(b, w, vmap[u])) return false;
        }
        if (pair_profile(a, v, v) != pair_profile(b, w, w)) return false;
        return true;
    }

    // With vmap complete, emit every dart bijection compatible with it.
    void emit_dart_maps() {
        // Group a-edges into parallel classes keyed by mapped endpoints +
        // kind + label; b-edges by their own endpoints.
        using Key = std::tuple<int, int, int, std::string>;
        std::map<Key, std::vector<int>> ea, eb;
        for (int e = 0; e < a.num_edges(); ++e) {
            const Edge& ed = a.edge(e);
            int x = vmap[ed.u], y = vmap[ed.v];
            if (x > y) std::swap(x, y);
            ea[{x, y, static_cast<int>(ed.kind), ed.label}].push_back(e);
        }
        for (int e = 0; e < b.num_edges(); ++e) {
            const Edge& ed = b.edge(e);
            int x = ed.u, y = ed.v;
            if (x > y) std::swap(x, y);
            eb[{x, y, static_cast<int>(ed.kind), ed.label}].push_back(e);
        }
        if (ea.size() != eb.size()) return;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (auto& [k, va] : ea) {
            auto it = eb.find(k);
            if (it == eb.end() || it->second.size() != va.size()) return;
            groups.push_back({va, it->second});
        }

        std::vector<int> dmap(a.num_darts(), -1);
        // Recursive product over groups of (bijection, per-loop orientation).
        auto rec = [&](auto&& self, std::size_t gi) -> bool {
            if (gi == groups.size()) {
                Morphism m;
                m.src = ap;
                m.dst = bp;
                m.vmap = vmap;
                m.dmap = dmap;
                if (out.size() >= limit)
                    throw std::length_error("isomorphism enumeration limit exceeded");
                out.push_back(std::move(m));
                return first_only;
            }
            auto& [va, vb] = groups[gi];
            std::vector<int> perm(vb.begin(), vb.end());
            std::sort(perm.begin(), perm.end());
            do {
                bool ok = true;
                for (std::size_t i = 0; i < va.size(); ++i) {
                    const Edge& ea_ = a.edge(va[i]);
                    const Edge& eb_ = b.edge(perm[i]);
                    if (ea_.u == ea_.v) continue;  // loops handled below
                    // orient: dart 2e points u->v
                    if (vmap[ea_.u] == eb_.u) {
                        dmap[2 * va[i]] = 2 * perm[i];
                        dmap[2 * va[i] + 1] = 2 * perm[i] + 1;
                    } else {
                        dmap[2 * va[i]] = 2 * perm[i] + 1;
                        dmap[2 * va[i] + 1] = 2 * perm[i];
                    }
                    (void)ok;
                }
                // loops: 2 orientation choices each
                std::vector<int> loops;
                for (std::size_t i = 0; i < va.size(); ++i)
                    if (a.edge(va[i]).u == a.edge(va[i]).v) loops.push_back(static_cast<int>(i));
                auto loop_rec = [&](auto&& lself, std::size_t li) -> bool {
                    if (li == loops.size()) return self(self, gi + 1);
                    int i = loops[li];
                    for (int flip = 0; flip < 2; ++flip) {
                        dmap[2 * va[i]] = 2 * perm[i] + flip;
                        dmap[2 * va[i] + 1] = 2 * perm[i] + 1 - flip;
                        if (lself(lself, li + 1)) return true;
                    }
                    return false;
                };
                if (loop_rec(loop_rec, 0)) return true;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        };
        rec(rec, 0);
    }

    bool assign(int v) {
        if (v == a.num_vertices()) {
            std::size_t before = out.size();
            emit_dart_maps();
            return first_only && out.size() > before;
        }
        for (int w = 0; w < b.num_vertices(); ++w) {
            if (used[w] || !compatible(v, w)) continue;
            vmap[v] = w;
            used[w] = 1;
            bool done = assign(v + 1);
            used[w] = 0;
            vmap[v] = -1;
            if (done) return true;
        }
        return false;
    }
};

}  // namespace

std::vector<Morphism> enumerate_isomorphisms(GraphPtr src, GraphPtr dst,
                                             std::size_t limit, bool first_only) {
    const Graph& a = *src;
    const Graph& b = *dst;
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return {};
    auto [ca, cb] = joint_classes(a, b);
    {
        std::vector<int> sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return {};
    }
    IsoSearch s{a, b, src, dst, ca, cb, limit, first_only, {}, {}, {}};
    s.vmap.assign(a.num_vertices(), -1);
    s.used.assign(b.num_vertices(), 0);
    s.assign(0);
    return std::move(s.out);
}

std::optional<Morphism> isomorphic(GraphPtr g1, GraphPtr g2) {
    auto v = enumerate_isomorphisms(g1, g2, 1u << 20, /*first_only=*/true);
    if (v.empty()) return std::nullopt;
    return v.front();
}

std::vector<Morphism> automorphisms(GraphPtr g, std::size_t limit) {
    return enumerate_isomorphisms(g, g, limit, /*first_only=*/false);
}

}  // namespace covlab
