#include "covlab/walls.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace covlab {

namespace {

// Components of g with the listed edges removed; returns the count and fills
// the component id per vertex.
int components_without(const Graph& g, const std::vector<int>& removed,
                       std::vector<int>* comp_out) {
    std::vector<char> gone(g.num_edges(), 0);
    for (int e : removed) gone[e] = 1;
    std::vector<int> comp(g.num_vertices(), -1);
    int n = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = n;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : g.star(v)) {
                if (gone[Graph::edge_of(d)]) continue;
                int w = g.terminus(d);
                if (comp[w] < 0) {
                    comp[w] = n;
                    stack.push_back(w);
                }
            }
        }
        ++n;
    }
    if (comp_out) *comp_out = std::move(comp);
    return n;
}

// Builds the wall record when `edges` is a wall of g; the span check against
// the bound is the caller's business.
bool make_wall(const Graph& g, std::vector<int> edges, Wall* out) {
    std::vector<int> comp;
    if (components_without(g, edges, &comp) != 2) return false;
    out->edges = std::move(edges);
    std::sort(out->edges.begin(), out->edges.end());
    out->in_side_a.assign(g.num_vertices(), 0);
    out->side_a.clear();
    out->side_b.clear();
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (comp[v] == comp[0]) {
            out->in_side_a[v] = 1;
            out->side_a.push_back(v);
        } else {
            out->side_b.push_back(v);
        }
    }
    return true;
}

bool span_within(const std::vector<std::vector<int>>& dist, const Graph& g,
                 const std::vector<int>& edges, int C) {
    for (int e1 : edges)
        for (int e2 : edges)
            for (int u : {g.edge(e1).u, g.edge(e1).v})
                for (int v : {g.edge(e2).u, g.edge(e2).v})
                    if (dist[u][v] >= C) return false;
    return true;
}

}  // namespace

WallSet enumerate_walls(GraphPtr g, int C, int max_ball_edges) {
    if (C < 1) throw std::invalid_argument("enumerate_walls: bound must be positive");
    if (!g->is_connected())
        throw std::invalid_argument("enumerate_walls: graph must be connected");
    int n = g->num_vertices();
    std::vector<std::vector<int>> dist(n);
    for (int v = 0; v < n; ++v) dist[v] = g->distances_from(v);

    std::set<std::vector<int>> seen;
    WallSet ws;
    ws.graph = g;
    ws.bound = C;
    for (int center = 0; center < n; ++center) {
        std::vector<int> ball_edges;
        for (int e = 0; e < g->num_edges(); ++e)
            if (dist[center][g->edge(e).u] <= C - 1 && dist[center][g->edge(e).v] <= C - 1)
                ball_edges.push_back(e);
        if (static_cast<int>(ball_edges.size()) > max_ball_edges)
            throw std::length_error(
                "enumerate_walls: ball around " + g->vertex(center).id + " carries " +
                std::to_string(ball_edges.size()) + " candidate edges");
        for (std::uint64_t mask = 1; mask < (1ull << ball_edges.size()); ++mask) {
            std::vector<int> edges;
            for (std::size_t b = 0; b < ball_edges.size(); ++b)
                if (mask >> b & 1) edges.push_back(ball_edges[b]);
            if (!span_within(dist, *g, edges, C)) continue;
            if (!seen.insert(edges).second) continue;
            Wall w;
            if (make_wall(*g, edges, &w)) ws.walls.push_back(std::move(w));
        }
    }
    std::sort(ws.walls.begin(), ws.walls.end(),
              [](const Wall& a, const Wall& b) { return a.edges < b.edges; });
    return ws;
}

WallSet isolating_walls(GraphPtr g, int C) {
    if (C < 1) throw std::invalid_argument("isolating_walls: bound must be positive");
    if (!g->is_connected())
        throw std::invalid_argument("isolating_walls: graph must be connected");
    int n = g->num_vertices();
    std::vector<std::vector<int>> dist(n);
    for (int v = 0; v < n; ++v) dist[v] = g->distances_from(v);
    std::set<std::vector<int>> seen;
    WallSet ws;
    ws.graph = g;
    ws.bound = C;
    for (int v = 0; v < n; ++v) {
        std::set<int> inc;
        for (int d : g->star(v))
            if (g->terminus(d) != v) inc.insert(Graph::edge_of(d));
        std::vector<int> star(inc.begin(), inc.end());
        if (star.size() > 20)
            throw std::length_error("isolating_walls: star too large at " +
                                    g->vertex(v).id);
        for (std::uint64_t mask = 1; mask < (1ull << star.size()); ++mask) {
            std::vector<int> edges;
            for (std::size_t b = 0; b < star.size(); ++b)
                if (mask >> b & 1) edges.push_back(star[b]);
            if (!span_within(dist, *g, edges, C)) continue;
            if (!seen.insert(edges).second) continue;
            Wall w;
            if (make_wall(*g, edges, &w)) ws.walls.push_back(std::move(w));
        }
    }
    std::sort(ws.walls.begin(), ws.walls.end(),
              [](const Wall& a, const Wall& b) { return a.edges < b.edges; });
    return ws;
}

int separation_count(const WallSet& ws, int x, int y) {
    if (x < 0 || y < 0 || x >= ws.graph->num_vertices() || y >= ws.graph->num_vertices())
        throw std::invalid_argument("separation_count: unknown vertex");
    int count = 0;
    for (const Wall& w : ws.walls)
        if (w.in_side_a[x] != w.in_side_a[y]) ++count;
    return count;
}

WallReport wall_report(const WallSet& ws) {
    const Graph& g = *ws.graph;
    int n = g.num_vertices();
    WallReport rep;

    std::vector<int> per_edge(g.num_edges(), 0);
    for (const Wall& w : ws.walls)
        for (int e : w.edges) ++per_edge[e];
    for (int e = 0; e < g.num_edges(); ++e)
        rep.max_walls_per_edge = std::max(rep.max_walls_per_edge, per_edge[e]);

    for (int x = 0; x < n; ++x) {
        std::vector<int> dist = g.distances_from(x);
        for (int y = x + 1; y < n; ++y) {
            int sep = separation_count(ws, x, y);
            if (sep == 0 && rep.injective) {
                rep.injective = false;
                rep.non_separated = {x, y};
            }
            if (sep > rep.max_walls_per_edge * dist[y] && rep.nd_bound_ok) {
                rep.nd_bound_ok = false;
                rep.bound_witness = {x, y};
            }
        }
    }

    rep.crossings.assign(ws.walls.size(), 0);
    for (std::size_t i = 0; i < ws.walls.size(); ++i)
        for (std::size_t j = i + 1; j < ws.walls.size(); ++j) {
            bool aa = false, ab = false, ba = false, bb = false;
            for (int v = 0; v < n; ++v) {
                if (ws.walls[i].in_side_a[v]) {
                    (ws.walls[j].in_side_a[v] ? aa : ab) = true;
                } else {
                    (ws.walls[j].in_side_a[v] ? ba : bb) = true;
                }
            }
            if (aa && ab && ba && bb) {
                ++rep.crossings[i];
                ++rep.crossings[j];
            }
        }
    for (int c : rep.crossings) rep.max_crossings = std::max(rep.max_crossings, c);
    return rep;
}

std::string walls_json(const WallSet& ws) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const Wall& w : ws.walls) {
        nlohmann::ordered_json jw;
        jw["edges"] = nlohmann::ordered_json::array();
        for (int e : w.edges) jw["edges"].push_back(ws.graph->edge(e).id);
        jw["sideA"] = nlohmann::ordered_json::array();
        for (int v : w.side_a) jw["sideA"].push_back(ws.graph->vertex(v).id);
        jw["sideB"] = nlohmann::ordered_json::array();
        for (int v : w.side_b) jw["sideB"].push_back(ws.graph->vertex(v).id);
        j.push_back(jw);
    }
    return j.dump(2);
}

}  // namespace covlab
