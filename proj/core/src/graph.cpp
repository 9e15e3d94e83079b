#include "covlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace covlab {

int Graph::add_vertex(std::string id, std::string label) {
    verts_.push_back(Vertex{std::move(id), std::move(label)});
    star_.emplace_back();
    return num_vertices() - 1;
}

int Graph::add_edge(std::string id, int u, int v, EdgeKind kind, std::string label) {
    if (u < 0 || u >= num_vertices() || v < 0 || v >= num_vertices())
        throw std::invalid_argument("add_edge: endpoint out of range for edge " + id);
    int e = num_edges();
    edges_.push_back(Edge{std::move(id), u, v, kind, std::move(label)});
    star_[u].push_back(2 * e);
    star_[v].push_back(2 * e + 1);
    return e;
}

int Graph::degree(int v, EdgeKind k) const {
    int n = 0;
    for (int d : star_[v])
        if (kind(d) == k) ++n;
    return n;
}

int Graph::vertex_index(const std::string& id) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (verts_[i].id == id) return i;
    return -1;
}

int Graph::edge_index(const std::string& id) const {
    for (int i = 0; i < num_edges(); ++i)
        if (edges_[i].id == id) return i;
    return -1;
}

int Graph::dart_index(const std::string& id) const {
    if (id.empty()) return -1;
    char sign = id.back();
    if (sign != '+' && sign != '-') return -1;
    int e = edge_index(id.substr(0, id.size() - 1));
    if (e < 0) return -1;
    return 2 * e + (sign == '-' ? 1 : 0);
}

std::vector<int> Graph::component_ids() const {
    std::vector<int> comp(num_vertices(), -1);
    int next = 0;
    for (int s = 0; s < num_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::deque<int> q{s};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int d : star_[v]) {
                int w = terminus(d);
                if (comp[w] < 0) {
                    comp[w] = next;
                    q.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

int Graph::num_components() const {
    auto comp = component_ids();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

bool Graph::is_connected() const { return num_components() <= 1; }

std::vector<int> Graph::distances_from(int v) const {
    std::vector<int> dist(num_vertices(), -1);
    dist[v] = 0;
    std::deque<int> q{v};
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int d : star_[x]) {
            int w = terminus(d);
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<int> Graph::distances_from(int v, EdgeKind k) const {
    std::vector<int> dist(num_vertices(), -1);
    dist[v] = 0;
    std::deque<int> q{v};
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int d : star_[x]) {
            if (kind(d) != k) continue;
            int w = terminus(d);
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

int Graph::euler_characteristic() const { return num_vertices() - num_edges(); }

Graph Graph::kind_subgraph(EdgeKind k) const {
    Graph h;
    for (const Vertex& v : verts_) h.add_vertex(v.id, v.label);
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e].kind == k)
            h.add_edge(edges_[e].id, edges_[e].u, edges_[e].v, k, edges_[e].label);
    return h;
}

ValidationReport validate(const RawGraph& g) {
    ValidationReport rep;
    int nd = static_cast<int>(g.darts.size());
    int nv = static_cast<int>(g.vertices.size());
    for (int d = 0; d < nd; ++d) {
        const auto& dt = g.darts[d];
        if (dt.origin < 0 || dt.origin >= nv)
            rep.violations.push_back("dangling origin at dart " + dt.id);
        if (dt.reversal < 0 || dt.reversal >= nd) {
            rep.violations.push_back("dangling reversal at dart " + dt.id);
            continue;
        }
        if (dt.reversal == d)
            rep.violations.push_back("reversal fixed point at dart " + dt.id);
        else if (g.darts[dt.reversal].reversal != d)
            rep.violations.push_back("reversal not an involution at dart " + dt.id);
        else if (g.darts[dt.reversal].kind != dt.kind)
            rep.violations.push_back("kind mismatch on the edge of dart " + dt.id);
    }
    return rep;
}

Graph from_raw(const RawGraph& g) {
    ValidationReport rep = validate(g);
    if (!rep.valid())
        throw std::invalid_argument("from_raw: invalid graph: " + rep.violations.front());
    Graph out;
    for (const Vertex& v : g.vertices) out.add_vertex(v.id, v.label);
    int nd = static_cast<int>(g.darts.size());
    for (int d = 0; d < nd; ++d) {
        if (g.darts[d].reversal < d) continue;  // second dart of a seen edge
        const auto& a = g.darts[d];
        const auto& b = g.darts[a.reversal];
        std::string id = a.id;
        // strip a trailing orientation sign if present, for round-trip fidelity
        if (!id.empty() && (id.back() == '+' || id.back() == '-')) id.pop_back();
        out.add_edge(id, a.origin, b.origin, a.kind, a.label);
    }
    return out;
}

RawGraph to_raw(const Graph& g) {
    RawGraph raw;
    raw.vertices = g.vertices();
    raw.darts.resize(g.num_darts());
    for (int d = 0; d < g.num_darts(); ++d) {
        auto& dt = raw.darts[d];
        dt.id = g.dart_id(d);
        dt.origin = g.origin(d);
        dt.reversal = Graph::reversal(d);
        dt.kind = g.kind(d);
        dt.label = g.edge(Graph::edge_of(d)).label;
    }
    return raw;
}

ValidationReport validate(const Graph& g) { return validate(to_raw(g)); }

Graph subdivide(const Graph& g, int k, const std::vector<int>& edge_subset) {
    if (k < 1) throw std::invalid_argument("subdivide: k must be positive");
    std::vector<char> chosen(g.num_edges(), 0);
    for (int e : edge_subset) {
        if (e < 0 || e >= g.num_edges())
            throw std::invalid_argument("subdivide: edge index out of range");
        chosen[e] = 1;
    }
    Graph out;
    for (const Vertex& v : g.vertices()) out.add_vertex(v.id, v.label);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (!chosen[e] || k == 1) {
            out.add_edge(ed.id, ed.u, ed.v, ed.kind, ed.label);
            continue;
        }
        int prev = ed.u;
        for (int i = 1; i < k; ++i) {
            int m = out.add_vertex(ed.id + ".v" + std::to_string(i));
            out.add_edge(ed.id + "." + std::to_string(i), prev, m, ed.kind, ed.label);
            prev = m;
        }
        out.add_edge(ed.id + "." + std::to_string(k), prev, ed.v, ed.kind, ed.label);
    }
    return out;
}

Graph subdivide_all(const Graph& g, int k) {
    std::vector<int> all(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) all[e] = e;
    return subdivide(g, k, all);
}

Graph materialize_dashed(const Graph& g) {
    Graph out;
    for (const Vertex& v : g.vertices()) out.add_vertex(v.id, v.label);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.kind == EdgeKind::solid) {
            out.add_edge(ed.id, ed.u, ed.v, ed.kind, ed.label);
        } else {
            int m = out.add_vertex(ed.id + ".mid", "mid");
            out.add_edge(ed.id + ".1", ed.u, m, EdgeKind::solid, ed.label);
            out.add_edge(ed.id + ".2", m, ed.v, EdgeKind::solid, ed.label);
        }
    }
    return out;
}

}  // namespace covlab
