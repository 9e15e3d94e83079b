#pragma once

#include <memory>
#include <string>
#include <vector>

namespace covlab {

enum class EdgeKind { solid, dashed };

struct Vertex {
    std::string id;
    std::string label;  // optional annotation
};

// An unoriented edge between u and v (u == v for a loop).  Each edge yields
// two darts: dart 2*e points u -> v ("e+"), dart 2*e+1 points v -> u ("e-").
struct Edge {
    std::string id;
    int u = -1;
    int v = -1;
    EdgeKind kind = EdgeKind::solid;
    std::string label;
};

// Finite multigraph with darts as the primitive orientation device.
// Loops and parallel edges are allowed.  Immutable once built (builder-style
// add_* calls happen before the graph is shared).
class Graph {
public:
    int add_vertex(std::string id, std::string label = "");
    // Returns the edge index.  u/v are vertex indices.
    int add_edge(std::string id, int u, int v, EdgeKind kind = EdgeKind::solid,
                 std::string label = "");

    int num_vertices() const { return static_cast<int>(verts_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_darts() const { return 2 * num_edges(); }

    const Vertex& vertex(int v) const { return verts_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Vertex>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Dart accessors.  A dart d belongs to edge d/2.
    static int edge_of(int d) { return d / 2; }
    static int reversal(int d) { return d ^ 1; }
    int origin(int d) const {
        const Edge& e = edges_[d / 2];
        return (d & 1) ? e.v : e.u;
    }
    int terminus(int d) const { return origin(d ^ 1); }
    EdgeKind kind(int d) const { return edges_[d / 2].kind; }
    std::string dart_id(int d) const {
        return edges_[d / 2].id + ((d & 1) ? "-" : "+");
    }

    // Darts with origin v, in dart-index order.
    const std::vector<int>& star(int v) const { return star_[v]; }
    int degree(int v) const { return static_cast<int>(star_[v].size()); }
    int degree(int v, EdgeKind k) const;

    // -1 if no such id.
    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    // Accepts "<edgeid>+" / "<edgeid>-"; -1 if unknown.
    int dart_index(const std::string& id) const;

    bool is_connected() const;
    int num_components() const;
    std::vector<int> component_ids() const;  // component index per vertex

    // BFS distances from v (edge-count metric, both kinds); -1 if unreachable.
    std::vector<int> distances_from(int v) const;
    // Restricted to edges of the given kind.
    std::vector<int> distances_from(int v, EdgeKind k) const;

    // |V| - |E|
    int euler_characteristic() const;

    // Subgraph on the edges of one kind (all vertices kept).
    Graph kind_subgraph(EdgeKind k) const;

private:
    std::vector<Vertex> verts_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> star_;
};

using GraphPtr = std::shared_ptr<const Graph>;

// Dart-level raw structure able to represent broken graphs; used by
// validate() and the loaders.
struct RawGraph {
    struct Dart {
        std::string id;
        int origin = -1;    // vertex index, may be out of range in broken input
        int reversal = -1;  // dart index, ditto
        EdgeKind kind = EdgeKind::solid;
        std::string label;
    };
    std::vector<Vertex> vertices;
    std::vector<Dart> darts;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

// Checks: origin total and in range, reversal an involution without fixed
// points, kind constant on each dart orbit.
ValidationReport validate(const RawGraph& g);

// Pairs the darts of a valid RawGraph into edges.  Throws std::invalid_argument
// if validate() reports violations.
Graph from_raw(const RawGraph& g);
RawGraph to_raw(const Graph& g);
// Validation of an already-built Graph (invariants hold by construction, but
// this re-derives the report through the raw form for uniformity).
ValidationReport validate(const Graph& g);

// Replaces each listed edge by a path of k edges through k-1 fresh valence-2
// vertices (kind inherited); other edges untouched.  k >= 1.
Graph subdivide(const Graph& g, int k, const std::vector<int>& edge_subset);
Graph subdivide_all(const Graph& g, int k);

// Rewrites each dashed edge as a solid path of length 2 (midpoint vertices
// labelled "mid"); solid edges untouched.
Graph materialize_dashed(const Graph& g);

}  // namespace covlab
