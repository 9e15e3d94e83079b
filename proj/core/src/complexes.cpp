#include "covlab/complexes.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace covlab {

int SquaredComplex::euler_characteristic() const {
    return skeleton->num_vertices() - skeleton->num_edges() + num_squares();
}

namespace {

void require_closed_4(const Graph& g, const std::vector<int>& darts) {
    if (darts.size() != 4) throw std::invalid_argument("square: circuit length must be 4");
    for (int i = 0; i < 4; ++i) {
        int d = darts[i];
        if (d < 0 || d >= g.num_darts())
            throw std::invalid_argument("square: dart out of range");
        if (g.terminus(d) != g.origin(darts[(i + 1) % 4]))
            throw std::invalid_argument("square: circuit not closed");
    }
}

}  // namespace

SquaredComplex make_complex(GraphPtr skeleton,
                            const std::vector<std::vector<int>>& squares) {
    SquaredComplex k;
    k.skeleton = skeleton;
    std::set<Circuit> seen;
    for (const auto& s : squares) {
        require_closed_4(*skeleton, s);
        Circuit c = canonical_circuit(s);
        if (seen.insert(c).second) k.squares.push_back(c);
    }
    std::sort(k.squares.begin(), k.squares.end());
    return k;
}

SquaredComplex square_completion(GraphPtr g) {
    SquaredComplex k;
    k.skeleton = g;
    k.squares = reduced_circuits(*g, 4);
    return k;
}

namespace {

// #-subdivision with the owner of each fresh skeleton edge (original square
// index, or -1 for pieces of subdivided original edges).
struct Subdivided {
    SquaredComplex complex;
    std::vector<int> edge_owner;
};

Subdivided subdivide_impl(const SquaredComplex& k) {
    const Graph& g = *k.skeleton;
    auto b = std::make_shared<Graph>();
    std::vector<int> owner;
    auto add_edge = [&](const std::string& id, int u, int v, const std::string& label,
                        int own) {
        int e = b->add_edge(id, u, v, EdgeKind::solid, label);
        owner.push_back(own);
        return e;
    };

    for (const Vertex& v : g.vertices()) b->add_vertex(v.id, v.label);

    // edge paths: 4 fresh vertices and 5 unit edges per original edge
    std::vector<std::vector<int>> epoints(g.num_edges());  // interior points 1..4
    std::vector<std::vector<int>> esub(g.num_edges());     // unit edges 0..4
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        std::vector<int> pts = {ed.u};
        for (int i = 1; i <= 4; ++i)
            pts.push_back(b->add_vertex(ed.id + "#" + std::to_string(i),
                                        "edge:" + ed.id));
        pts.push_back(ed.v);
        epoints[e] = pts;
        for (int i = 0; i < 5; ++i)
            esub[e].push_back(add_edge(ed.id + "#s" + std::to_string(i), pts[i],
                                       pts[i + 1], "edge:" + ed.id, -1));
    }
    // point i (0..5) along dart d, and the unit dart from point i to i+1
    auto point_on = [&](int d, int i) {
        if (d & 1) i = 5 - i;
        return epoints[Graph::edge_of(d)][i];
    };
    auto subdart = [&](int d, int i) {
        if (d & 1) return 2 * esub[Graph::edge_of(d)][4 - i] + 1;
        return 2 * esub[Graph::edge_of(d)][i];
    };

    std::vector<std::vector<int>> out_squares;
    for (std::size_t s = 0; s < k.squares.size(); ++s) {
        const std::vector<int>& d = k.squares[s].darts;
        std::string tag = "sq:" + std::to_string(s);
        // grid points P[x][y]: bottom row = d[0], right column = d[1],
        // top row = reverse of d[2], left column = reverse of d[3]
        int P[6][6];
        for (int x = 0; x <= 5; ++x)
            for (int y = 0; y <= 5; ++y) {
                if (y == 0)
                    P[x][y] = point_on(d[0], x);
                else if (x == 5)
                    P[x][y] = point_on(d[1], y);
                else if (y == 5)
                    P[x][y] = point_on(d[2], 5 - x);
                else if (x == 0)
                    P[x][y] = point_on(d[3], 5 - y);
                else
                    P[x][y] = b->add_vertex("q" + std::to_string(s) + "#" +
                                                std::to_string(x) + "." +
                                                std::to_string(y),
                                            tag);
            }
        int he[5][6], ve[6][5];  // grid-interior edge indices
        for (int x = 0; x < 5; ++x)
            for (int y = 1; y <= 4; ++y)
                he[x][y] = add_edge("q" + std::to_string(s) + "#h" + std::to_string(x) +
                                        "." + std::to_string(y),
                                    P[x][y], P[x + 1][y], tag, static_cast<int>(s));
        for (int x = 1; x <= 4; ++x)
            for (int y = 0; y < 5; ++y)
                ve[x][y] = add_edge("q" + std::to_string(s) + "#v" + std::to_string(x) +
                                        "." + std::to_string(y),
                                    P[x][y], P[x][y + 1], tag, static_cast<int>(s));
        // dart P[x][y] -> P[x+1][y] resp. P[x][y] -> P[x][y+1]
        auto dart_h = [&](int x, int y) {
            if (y == 0) return subdart(d[0], x);
            if (y == 5) return Graph::reversal(subdart(d[2], 4 - x));
            return 2 * he[x][y];
        };
        auto dart_v = [&](int x, int y) {
            if (x == 0) return Graph::reversal(subdart(d[3], 4 - y));
            if (x == 5) return subdart(d[1], y);
            return 2 * ve[x][y];
        };
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                out_squares.push_back({dart_h(x, y), dart_v(x + 1, y),
                                       Graph::reversal(dart_h(x, y + 1)),
                                       Graph::reversal(dart_v(x, y))});
    }

    Subdivided out;
    out.complex = make_complex(b, out_squares);
    out.edge_owner = std::move(owner);
    return out;
}

}  // namespace

SquaredComplex hash_subdivide(const SquaredComplex& k) { return subdivide_impl(k).complex; }

Graph link(const SquaredComplex& k, int v) {
    const Graph& g = *k.skeleton;
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("link: unknown vertex");
    Graph l;
    std::map<int, int> node;  // dart -> link vertex
    for (int d : g.star(v)) node[d] = l.add_vertex(g.dart_id(d));
    for (std::size_t s = 0; s < k.squares.size(); ++s) {
        const auto& darts = k.squares[s].darts;
        for (int i = 0; i < 4; ++i) {
            int din = Graph::reversal(darts[(i + 3) % 4]);
            int dout = darts[i];
            if (g.origin(dout) != v) continue;
            l.add_edge("sq" + std::to_string(s) + ".c" + std::to_string(i), node[din],
                       node[dout]);
        }
    }
    return l;
}

NpcReport is_npc(const SquaredComplex& k) {
    NpcReport rep;
    const Graph& g = *k.skeleton;
    for (int v = 0; v < g.num_vertices(); ++v) {
        Graph l = link(k, v);
        // 1-cycles
        for (const Edge& e : l.edges())
            if (e.u == e.v) {
                rep.npc = false;
                rep.witness_vertex = v;
                rep.witness = "link loop at node " + l.vertex(e.u).id;
                return rep;
            }
        // 2-cycles
        std::set<std::pair<int, int>> pairs;
        for (const Edge& e : l.edges()) {
            auto key = std::minmax(e.u, e.v);
            if (!pairs.insert(key).second) {
                rep.npc = false;
                rep.witness_vertex = v;
                rep.witness = "parallel link arcs between " + l.vertex(e.u).id + " and " +
                              l.vertex(e.v).id;
                return rep;
            }
        }
        // 3-cycles (links are simple at this point)
        std::vector<std::set<int>> adj(l.num_vertices());
        for (const Edge& e : l.edges()) {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
        for (int a = 0; a < l.num_vertices(); ++a)
            for (int bb : adj[a])
                for (int c : adj[bb])
                    if (c > bb && bb > a && adj[c].count(a)) {
                        rep.npc = false;
                        rep.witness_vertex = v;
                        rep.witness = "link triangle " + l.vertex(a).id + "," +
                                      l.vertex(bb).id + "," + l.vertex(c).id;
                        return rep;
                    }
    }
    return rep;
}

CircuitTypeCounts classify_4circuits(const SquaredComplex& k) {
    CircuitTypeCounts counts;
    std::set<Circuit> cells(k.squares.begin(), k.squares.end());
    const Graph& g = *k.skeleton;
    for (const Circuit& c : reduced_circuits(g, 4)) {
        if (cells.count(c)) {
            ++counts.type1;
            continue;
        }
        std::set<std::string> owners;
        for (int d : c.darts) {
            const std::string& lab = g.edge(Graph::edge_of(d)).label;
            if (lab.rfind("sq:", 0) == 0) owners.insert(lab);
        }
        if (owners.size() <= 1)
            ++counts.type2;
        else
            ++counts.type3;
    }
    return counts;
}

bool check_square_recovery(const SquaredComplex& k) {
    SquaredComplex sub = hash_subdivide(k);
    SquaredComplex completed = square_completion(sub.skeleton);
    return sub.squares == completed.squares;
}

SquaredComplex wise_complex() {
    auto g = std::make_shared<Graph>();
    int v = g->add_vertex("v");
    for (const char* id : {"a", "b", "x", "y", "z"}) g->add_edge(id, v, v);
    auto dart = [&](char c, bool inv) {
        int e = g->edge_index(std::string(1, c));
        return 2 * e + (inv ? 1 : 0);
    };
    // one square per relator; upper case = inverse letter
    std::vector<std::vector<int>> squares;
    for (const char* w : {"ayAX", "byBX", "azBZ", "axBY", "bxAZ", "bzAY"}) {
        std::vector<int> c;
        for (const char* p = w; *p; ++p)
            c.push_back(dart(static_cast<char>(std::tolower(*p)), std::isupper(*p) != 0));
        squares.push_back(std::move(c));
    }
    return make_complex(g, squares);
}

Graph leaf_barycentric(const Graph& g) {
    Graph out = subdivide_all(g, 2);
    // subdivision keeps the original vertices at their indices
    for (int v = 0; v < g.num_vertices(); ++v) {
        int leaf = out.add_vertex("leaf." + g.vertex(v).id, "leaf");
        out.add_edge("leafedge." + g.vertex(v).id, v, leaf);
    }
    return out;
}

}  // namespace covlab
