#pragma once

#include <string>
#include <vector>

#include "covlab/circuits.hpp"
#include "covlab/graph.hpp"

namespace covlab {

// A 2-complex whose 2-cells are attached along closed dart circuits of
// length 4, stored canonically (up to rotation and reversal) without
// duplicates.  Attaching circuits are normally reduced; non-reduced ones are
// representable so that degenerate gluings (the link-loop pathologies) can be
// constructed and detected.
struct SquaredComplex {
    GraphPtr skeleton;
    std::vector<Circuit> squares;  // canonical, sorted, unique

    int num_squares() const { return static_cast<int>(squares.size()); }
    // |V| - |E| + |F|
    int euler_characteristic() const;
};

// Validates closure and length of each attaching circuit and dedups; throws
// std::invalid_argument on a non-closed or wrong-length circuit.
SquaredComplex make_complex(GraphPtr skeleton, const std::vector<std::vector<int>>& squares);

// One 2-cell per reduced circuit of length 4.
SquaredComplex square_completion(GraphPtr g);

// #-subdivision: each edge becomes a path of 5 edges, each square a 5x5 grid
// of 25 squares.  Bookkeeping is kept in edge labels: subdivided original
// edges are labelled "edge:<original id>", fresh grid-interior edges
// "sq:<original square index>"; fresh vertices get matching labels.
SquaredComplex hash_subdivide(const SquaredComplex& k);

// Link of a vertex: nodes are the darts leaving v (node ids = dart ids), one
// arc per square corner at v.  Loops appear exactly at non-reduced corners.
Graph link(const SquaredComplex& k, int v);

// Gromov condition for squared complexes: every link is simplicial (no
// loops, no parallel arcs) and has no cycle shorter than 4.
struct NpcReport {
    bool npc = true;
    int witness_vertex = -1;       // complex vertex with a bad link
    std::string witness;           // what was found there
};
NpcReport is_npc(const SquaredComplex& k);

// Classification of the reduced 4-circuits of k's skeleton:
//   type 1: bounds a stored square;
//   type 2: residual circuit threading the grid of a single original square
//           (a 1-cycle in a link of the unsubdivided complex);
//   type 3: residual circuit straddling two original squares (a 2-cycle).
// Residual types are read off the "sq:" bookkeeping labels that
// hash_subdivide leaves on grid-interior edges.
struct CircuitTypeCounts {
    long long type1 = 0;
    long long type2 = 0;
    long long type3 = 0;
};
CircuitTypeCounts classify_4circuits(const SquaredComplex& k);

// Whether the #-subdivision is recovered from its 1-skeleton by square
// completion; true for non-positively curved (indeed for simple) inputs.
bool check_square_recovery(const SquaredComplex& k);

// The standard 2-complex of the presentation with generators a,b,x,y,z and
// the six length-4 relators a y a^-1 x^-1, b y b^-1 x^-1, a z b^-1 z^-1,
// a x b^-1 y^-1, b x a^-1 z^-1, b z a^-1 y^-1; its universal cover is the
// product of a 4-valent and a 6-valent tree.
SquaredComplex wise_complex();

// Barycentric subdivision (every edge halved) plus a leaf at each original
// vertex; preserves the automorphism group.
Graph leaf_barycentric(const Graph& g);

}  // namespace covlab
