#pragma once

#include <memory>
#include <string>

#include "covlab/graph.hpp"

namespace testutil {

using covlab::EdgeKind;
using covlab::Graph;
using covlab::GraphPtr;

inline GraphPtr cycle(int n) {
    auto g = std::make_shared<Graph>();
    for (int i = 0; i < n; ++i) g->add_vertex("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        g->add_edge("e" + std::to_string(i), i, (i + 1) % n);
    return g;
}

inline GraphPtr path(int n) {  // n vertices, n-1 edges
    auto g = std::make_shared<Graph>();
    for (int i = 0; i < n; ++i) g->add_vertex("v" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) g->add_edge("e" + std::to_string(i), i, i + 1);
    return g;
}

inline GraphPtr rose(int loops) {
    auto g = std::make_shared<Graph>();
    g->add_vertex("v");
    for (int i = 0; i < loops; ++i) g->add_edge("l" + std::to_string(i), 0, 0);
    return g;
}

inline GraphPtr disjoint_union(const Graph& a, const Graph& b) {
    auto g = std::make_shared<Graph>();
    for (const auto& v : a.vertices()) g->add_vertex("a." + v.id, v.label);
    for (const auto& v : b.vertices()) g->add_vertex("b." + v.id, v.label);
    int off = a.num_vertices();
    for (const auto& e : a.edges()) g->add_edge("a." + e.id, e.u, e.v, e.kind, e.label);
    for (const auto& e : b.edges()) g->add_edge("b." + e.id, e.u + off, e.v + off, e.kind, e.label);
    return g;
}

}  // namespace testutil
