#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covlab/graph.hpp"

namespace covlab {

// A wall: an edge set whose removal leaves exactly two connected components,
// with the vertex span of the edge set of diameter < the bound C.  Side A is
// the component containing the smallest vertex index.
struct Wall {
    std::vector<int> edges;       // sorted edge indices
    std::vector<int> side_a, side_b;  // sorted vertex indices
    std::vector<char> in_side_a;      // per vertex
};

struct WallSet {
    GraphPtr graph;
    int bound = 0;  // C
    std::vector<Wall> walls;  // sorted by edge list
};

// Complete enumeration by the definition: edge subsets inside each ball of
// diameter < C, globally deduplicated.  Throws std::length_error when some
// ball carries more than `max_ball_edges` candidate edges (the subset lattice
// explodes), and std::invalid_argument on a disconnected graph or C < 1.
WallSet enumerate_walls(GraphPtr g, int C, int max_ball_edges = 20);

// The star walls only: subsets of a single vertex's non-loop incident edges,
// kept when the span has diameter < C and removal leaves exactly two
// components.  A cheap complete subfamily of enumerate_walls(g, C) that
// already certifies injectivity on graphs whose balls are too big for the
// full enumeration.
WallSet isolating_walls(GraphPtr g, int C);

// Number of walls with x and y on opposite sides; throws on unknown vertices.
int separation_count(const WallSet& ws, int x, int y);

struct WallReport {
    bool injective = true;  // every distinct vertex pair separated by >= 1 wall
    std::pair<int, int> non_separated{-1, -1};
    int max_walls_per_edge = 0;  // N
    bool nd_bound_ok = true;     // separation_count(x,y) <= N * d(x,y) everywhere
    std::pair<int, int> bound_witness{-1, -1};
    std::vector<int> crossings;  // per wall: how many other walls it crosses
    int max_crossings = 0;
};

// Injectivity, the N*d bound, and crossing statistics (two walls cross when
// all four side intersections are nonempty).
WallReport wall_report(const WallSet& ws);

// JSON list of {"edges":[ids],"sideA":[vertex ids],"sideB":[vertex ids]}.
std::string walls_json(const WallSet& ws);

}  // namespace covlab
