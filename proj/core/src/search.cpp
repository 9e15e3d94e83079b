#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "covlab/iso.hpp"
#include "covlab/pieces.hpp"

namespace covlab {

namespace {

// ---------------------------------------------------------------------------
// Normal-closure rule.  A finite graph is covered by the infinite assembly
// iff it covers x2 with every solid component mapping isomorphically onto the
// piece; such a graph is exactly a set of "sheets" (copies of the piece) plus
// one lift of each dashed x2 edge per sheet.  The search looks for sheets,
// dashed wiring, and a simultaneous covering onto x1, backtracking over
// ports (sheet, dashed x2 dart).  Only the vertex map of a sheet's candidate
// restriction matters during the search: vertex stars split into the solid
// part (where any cover with that vertex map is bijective) and the dashed
// part (where the port images must biject), so any complete assignment
// extends to a genuine covering.
// ---------------------------------------------------------------------------
struct NormalSearch {
    const PieceTemplate& t;
    int N;
    const Graph& x1;
    const Graph& x2;
    std::vector<int> dashed;                  // dashed x2 darts in order
    std::vector<std::vector<int>> vmaps;      // distinct vertex maps of 𝒫
    std::vector<int> vmap_rep;                // a cover index realizing each
    std::vector<CoveringMap> covers;

    int k = 0;                                 // sheets in use
    std::vector<int> vm;                       // per sheet: index into vmaps
    std::vector<std::vector<int>> partner;     // [sheet][x2 dart] -> sheet or -1
    std::vector<std::vector<int>> img;         // [sheet][x2 dart] -> x1 dart or -1
    std::vector<int> edge_uses;                // per x1 edge: lifts assigned
    std::vector<int> parallel_rep;             // per x1 edge: first edge of its
                                               // parallel dashed class
    long long nodes = 0;
    bool found = false;

    explicit NormalSearch(const PieceTemplate& tmpl, int n)
        : t(tmpl), N(n), x1(*tmpl.x1), x2(*tmpl.x2) {
        for (int d = 0; d < x2.num_darts(); ++d)
            if (x2.kind(d) == EdgeKind::dashed) dashed.push_back(d);
        covers = enumerate_coverings(t.piece, t.y1);
        for (std::size_t i = 0; i < covers.size(); ++i) {
            const auto& v = covers[i].f.vmap;
            if (std::find(vmaps.begin(), vmaps.end(), v) == vmaps.end()) {
                vmaps.push_back(v);
                vmap_rep.push_back(static_cast<int>(i));
            }
        }
        vm.assign(N, -1);
        partner.assign(N, std::vector<int>(x2.num_darts(), -1));
        img.assign(N, std::vector<int>(x2.num_darts(), -1));
        edge_uses.assign(x1.num_edges(), 0);
        parallel_rep.assign(x1.num_edges(), -1);
        for (int e = 0; e < x1.num_edges(); ++e) {
            if (x1.edge(e).kind != EdgeKind::dashed) continue;
            for (int e2 = 0; e2 <= e; ++e2)
                if (x1.edge(e2).kind == EdgeKind::dashed &&
                    std::minmax(x1.edge(e2).u, x1.edge(e2).v) ==
                        std::minmax(x1.edge(e).u, x1.edge(e).v)) {
                    parallel_rep[e] = e2;
                    break;
                }
        }
    }

    bool image_free(int s, int v, int i) const {
        for (int d : x2.star(v))
            if (x2.kind(d) == EdgeKind::dashed && img[s][d] == i) return false;
        return true;
    }

    // assign both sides of a matched dashed edge lift
    void link(int s, int d, int s2, int i) {
        partner[s][d] = s2;
        partner[s2][Graph::reversal(d)] = s;
        img[s][d] = i;
        img[s2][Graph::reversal(d)] = Graph::reversal(i);
        ++edge_uses[Graph::edge_of(i)];
    }
    void unlink(int s, int d, int s2) {
        --edge_uses[Graph::edge_of(img[s][d])];
        partner[s][d] = -1;
        partner[s2][Graph::reversal(d)] = -1;
        img[s][d] = -1;
        img[s2][Graph::reversal(d)] = -1;
    }

    struct Option {
        int s2;  // partner sheet; == k means fresh
        int w;   // fresh sheet's vertex-map index, -1 otherwise
        int i;   // x1 image dart of the port
    };

    // Symmetry cut: if the image edge and an earlier parallel edge are both
    // globally unused, the swap automorphism of x1 makes them interchangeable,
    // so only the earlier one is tried.
    bool symmetric_duplicate(int i) const {
        int e = Graph::edge_of(i);
        return edge_uses[e] == 0 && parallel_rep[e] < e && edge_uses[parallel_rep[e]] == 0;
    }

    // options for port (s, d); stops early once `cap` options are known
    void port_options(int s, int d, std::size_t cap, std::vector<Option>& out) const {
        out.clear();
        int rd = Graph::reversal(d);
        int u1 = vmaps[vm[s]][x2.origin(d)];
        int fresh_lim = k < N ? static_cast<int>(vmaps.size()) : 0;
        for (int s2 = 0; s2 <= k; ++s2) {
            if (s2 < k && partner[s2][rd] >= 0) continue;
            int wlim = s2 == k ? fresh_lim : 1;
            for (int w = 0; w < wlim; ++w) {
                int u2 = s2 == k ? vmaps[w][x2.origin(rd)] : vmaps[vm[s2]][x2.origin(rd)];
                for (int i = 0; i < x1.num_darts(); ++i) {
                    if (x1.kind(i) != EdgeKind::dashed) continue;
                    if (x1.origin(i) != u1 || x1.terminus(i) != u2) continue;
                    if (symmetric_duplicate(i)) continue;
                    if (!image_free(s, x2.origin(d), i)) continue;
                    if (s2 < k && !image_free(s2, x2.origin(rd), Graph::reversal(i)))
                        continue;
                    out.push_back({s2, s2 == k ? w : -1, i});
                    if (out.size() >= cap) return;
                }
            }
        }
    }

    void dfs() {
        if (found) return;
        // most-constrained port first; any port without options prunes the node
        int bs = -1, bd = -1;
        std::vector<Option> best, cur;
        for (int s = 0; s < k; ++s)
            for (int d : dashed) {
                if (partner[s][d] >= 0) continue;
                std::size_t cap = bs < 0 ? SIZE_MAX : best.size();
                port_options(s, d, cap, cur);
                if (cur.empty()) return;
                if (bs < 0 || cur.size() < best.size()) {
                    bs = s;
                    bd = d;
                    std::swap(best, cur);
                    if (best.size() == 1) goto expand;
                }
            }
        if (bs < 0) {
            found = true;  // every port of every sheet matched
            return;
        }
    expand:
        for (const Option& o : best) {
            ++nodes;
            bool fresh = o.s2 == k;
            if (fresh) {
                vm[k] = o.w;
                ++k;
            }
            link(bs, bd, o.s2, o.i);
            dfs();
            if (found) return;  // leave the solution assembled for build()
            unlink(bs, bd, o.s2);
            if (fresh) {
                vm[k - 1] = -1;
                --k;
            }
        }
    }

    int partner_count(int s) const {
        int n = 0;
        for (int d : dashed)
            if (partner[s][d] >= 0) ++n;
        return n;
    }

    SearchResult run() {
        SearchResult res;
        // root symmetry: vertex maps related by an automorphism of x1 give
        // the same solutions up to post-composition
        std::vector<std::vector<int>> vperms;
        for (const Morphism& a : automorphisms(t.x1)) {
            if (std::find(vperms.begin(), vperms.end(), a.vmap) == vperms.end())
                vperms.push_back(a.vmap);
        }
        std::vector<char> skip(vmaps.size(), 0);
        for (std::size_t w = 0; w < vmaps.size(); ++w)
            for (std::size_t w2 = w + 1; w2 < vmaps.size(); ++w2)
                for (const auto& perm : vperms) {
                    std::vector<int> mapped(vmaps[w].size());
                    for (std::size_t v = 0; v < mapped.size(); ++v)
                        mapped[v] = perm[vmaps[w][v]];
                    if (mapped == vmaps[w2]) skip[w2] = 1;
                }
        for (std::size_t w = 0; w < vmaps.size() && !found; ++w) {
            if (skip[w]) continue;
            k = 1;
            vm[0] = static_cast<int>(w);
            dfs();
            if (found) break;  // leave the solution assembled for build()
            vm[0] = -1;
            k = 0;
        }
        res.nodes_explored = nodes;
        res.found = found;
        if (found) res.counterexample = build();
        return res;
    }

    GraphPtr build() const {
        auto g = std::make_shared<Graph>();
        const Graph& piece = *t.piece;
        for (int s = 0; s < k; ++s) {
            for (const Vertex& v : piece.vertices())
                g->add_vertex("s" + std::to_string(s) + "." + v.id);
            for (const Edge& e : piece.edges())
                g->add_edge("s" + std::to_string(s) + "." + e.id,
                            s * piece.num_vertices() + e.u, s * piece.num_vertices() + e.v,
                            e.kind, e.label);
        }
        int n = 0;
        for (int s = 0; s < k; ++s)
            for (int d : dashed) {
                int s2 = partner[s][d];
                // one edge per matched dart pair
                if (s2 < s || (s2 == s && Graph::reversal(d) < d)) continue;
                g->add_edge("w" + std::to_string(n++),
                            s * t.piece->num_vertices() + x2.origin(d),
                            s2 * t.piece->num_vertices() + x2.terminus(d),
                            EdgeKind::dashed);
            }
        return g;
    }
};

// ---------------------------------------------------------------------------
// Pattern rule.  A candidate graph is a set of sheets whose dashed edges form
// disjoint circles following the cyclic label itineraries.  Ports are
// (sheet, piece vertex, slot) where slot 0 points towards the next itinerary
// position.  Only the label that occurs twice in one itinerary needs a phase
// choice per sheet; all other phases are forced by the label.
// ---------------------------------------------------------------------------
struct PatternSearch {
    const PieceTemplate& t;
    int N;
    const Graph& piece;
    std::vector<int> itin_of, first_pos;           // per piece vertex
    std::vector<char> ambiguous;                   // label occurs twice
    std::map<std::string, int> vert_of_label;

    int k = 0;
    std::vector<std::vector<int>> phase;           // [sheet][vertex], -1 unset
    std::vector<std::vector<std::array<int, 2>>> mate;  // [sheet][vertex][slot] -> sheet
    std::vector<std::vector<std::array<int, 2>>> mate_v;  // matched vertex
    long long nodes = 0;
    bool found = false;
    GraphPtr counterexample;

    explicit PatternSearch(const PieceTemplate& tmpl, int n)
        : t(tmpl), N(n), piece(*tmpl.piece) {
        int nv = piece.num_vertices();
        itin_of.assign(nv, -1);
        first_pos.assign(nv, -1);
        ambiguous.assign(nv, 0);
        for (int v = 0; v < nv; ++v) vert_of_label[piece.vertex(v).id] = v;
        for (std::size_t i = 0; i < t.patterns.itineraries.size(); ++i) {
            const auto& it = t.patterns.itineraries[i];
            for (std::size_t j = 0; j < it.size(); ++j) {
                int v = vert_of_label.at(it[j]);
                if (itin_of[v] < 0) {
                    itin_of[v] = static_cast<int>(i);
                    first_pos[v] = static_cast<int>(j);
                } else {
                    ambiguous[v] = 1;
                }
            }
        }
        phase.assign(N, std::vector<int>(nv, -1));
        mate.assign(N, std::vector<std::array<int, 2>>(nv, {-1, -1}));
        mate_v.assign(N, std::vector<std::array<int, 2>>(nv, {-1, -1}));
    }

    const std::vector<std::string>& itinerary(int v) const {
        return t.patterns.itineraries[itin_of[v]];
    }

    void with_phase(int s, int v, auto&& body) {
        if (phase[s][v] >= 0) {
            body();
            return;
        }
        if (!ambiguous[v]) {
            phase[s][v] = first_pos[v];
            body();
            phase[s][v] = -1;
            return;
        }
        const auto& it = itinerary(v);
        const std::string& id = piece.vertex(v).id;
        for (std::size_t j = 0; j < it.size() && !found; ++j) {
            if (it[j] != id) continue;
            phase[s][v] = static_cast<int>(j);
            body();
            phase[s][v] = -1;
        }
    }

    void try_mate(int s, int v, int slot, int target_pos, int s2, int v2) {
        if (mate[s2][v2][1 - slot] >= 0) return;
        // s2 == s, v2 == v gives a dashed loop; legitimate exactly when the
        // phase is a fixed point of the advance (length-1 itineraries), which
        // the phase check below decides.
        auto attempt = [&] {
            if (phase[s2][v2] != target_pos) return;
            ++nodes;
            mate[s][v][slot] = s2;
            mate_v[s][v][slot] = v2;
            mate[s2][v2][1 - slot] = s;
            mate_v[s2][v2][1 - slot] = v;
            dfs();
            if (found) return;  // keep the witness wiring intact
            mate[s][v][slot] = -1;
            mate_v[s][v][slot] = -1;
            mate[s2][v2][1 - slot] = -1;
            mate_v[s2][v2][1 - slot] = -1;
        };
        if (phase[s2][v2] >= 0) {
            attempt();
        } else {
            int keep = phase[s2][v2];
            phase[s2][v2] = target_pos;
            // phase choice must name this vertex's label
            if (itinerary(v2)[target_pos] == piece.vertex(v2).id) attempt();
            phase[s2][v2] = keep;
        }
    }

    void dfs() {
        if (found) return;
        for (int s = 0; s < k; ++s)
            for (int v = 0; v < piece.num_vertices(); ++v)
                for (int slot = 0; slot < 2; ++slot)
                    if (mate[s][v][slot] < 0) {
                        with_phase(s, v, [&] {
                            const auto& it = itinerary(v);
                            int len = static_cast<int>(it.size());
                            int j = slot == 0 ? (phase[s][v] + 1) % len
                                              : (phase[s][v] - 1 + len) % len;
                            int v2 = vert_of_label.at(it[j]);
                            for (int s2 = 0; s2 < k && !found; ++s2)
                                try_mate(s, v, slot, j, s2, v2);
                            if (!found && k < N) {
                                ++k;
                                try_mate(s, v, slot, j, k - 1, v2);
                                if (!found) --k;
                            }
                        });
                        return;
                    }
        // complete wiring: a candidate graph; accept iff it covers both targets
        GraphPtr g = build();
        if (!enumerate_coverings(g, t.x1).empty() &&
            !enumerate_coverings(g, t.x2).empty()) {
            found = true;
            counterexample = g;
        }
    }

    GraphPtr build() const {
        auto g = std::make_shared<Graph>();
        for (int s = 0; s < k; ++s) {
            for (const Vertex& v : piece.vertices())
                g->add_vertex("s" + std::to_string(s) + "." + v.id);
            for (const Edge& e : piece.edges())
                g->add_edge("s" + std::to_string(s) + "." + e.id,
                            s * piece.num_vertices() + e.u, s * piece.num_vertices() + e.v,
                            e.kind, e.label);
        }
        int n = 0;
        for (int s = 0; s < k; ++s)
            for (int v = 0; v < piece.num_vertices(); ++v) {
                int s2 = mate[s][v][0], v2 = mate_v[s][v][0];
                g->add_edge("w" + std::to_string(n++), s * piece.num_vertices() + v,
                            s2 * piece.num_vertices() + v2, EdgeKind::dashed);
            }
        return g;
    }

    SearchResult run() {
        SearchResult res;
        k = 1;
        dfs();
        res.found = found;
        res.counterexample = counterexample;
        res.nodes_explored = nodes;
        return res;
    }
};

}  // namespace

SearchResult exhaustive_search(const PieceTemplate& t, int N) {
    if (N < 1) throw std::invalid_argument("exhaustive_search: N must be positive");
    if (t.rule == AssemblyRule::normal_closure) {
        if (N > 6) throw std::length_error("exhaustive_search: N too large");
        return NormalSearch(t, N).run();
    }
    if (N > 6) throw std::length_error("exhaustive_search: N too large");
    return PatternSearch(t, N).run();
}

}  // namespace covlab
