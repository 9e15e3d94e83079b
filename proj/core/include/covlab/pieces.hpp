#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covlab/covering.hpp"
#include "covlab/morphism.hpp"

namespace covlab {

// Cyclic vertex-label itineraries followed by the dashed lines joining copies
// of the piece (primitive periods).
struct PatternRule {
    std::vector<std::vector<std::string>> itineraries;
};

// Infinite assembly rule for piece templates: either dashed lines following
// fixed label patterns, or the regular cover of x2 in which every solid loop
// lifts closed (equivalently: a finite piece-graph is covered by the assembly
// iff it covers x2 with every solid component mapping isomorphically onto the
// piece).
enum class AssemblyRule { pattern, normal_closure };

struct PieceTemplate {
    AssemblyRule rule;
    GraphPtr piece;  // the solid graph Y, connected
    GraphPtr y1;     // solid quotients
    GraphPtr y2;
    Morphism p1;  // piece -> y1, degree-3 covering
    Morphism p2;  // piece -> y2
    // Quotient targets with dashed structure.  x1/x2 extend y1/y2 (pattern
    // rule) or y1/piece (normal-closure rule) with identical vertex and solid
    // edge indexing; dashed edges appended after the solid ones.
    GraphPtr x1;
    GraphPtr x2;
    std::vector<int> dashed_profile;  // per piece vertex: dashed ends per copy

    PatternRule patterns;  // rule == pattern

    // rule == normal_closure:
    std::vector<std::pair<int, int>> exceptional;  // ℰ as (x1 dart, x2 dart) pairs
    std::vector<int> green_x2_edges;  // x2 edge indices; dart 2e is the marked orientation
    std::vector<int> red_x2_edges;
    std::vector<int> red_x1_edges;
    std::vector<int> orange_x1_darts;  // dashed x1 darts at the central image vertex
};

PieceTemplate sec4_template();
PieceTemplate sec5_template();

// Bounded-radius truncation of the infinite assembly: copies of the piece
// joined by dashed edges in a tree of copies.  Vertex (copy c, piece vertex v)
// has index c*piece_n + v.
struct Truncation {
    const PieceTemplate* tmpl = nullptr;
    GraphPtr graph;
    int radius = 0;
    int piece_n = 0;  // vertices per copy
    int num_copies = 0;
    std::vector<int> copy_depth;   // per copy
    std::vector<int> copy_parent;  // per copy, -1 at the basepoint
    std::vector<char> interior;    // per vertex: full dashed star present
    // Per dart of `graph`:
    //  - solid darts: the corresponding piece dart (copy chart).
    //  - dashed darts (normal-closure rule): the x2 dart the edge lifts.
    //  - dashed darts (pattern rule): -1.
    std::vector<int> dart_chart;
    // Pattern rule only: per dashed dart, 0 if it leaves its origin towards
    // the next itinerary position, 1 towards the previous one.
    std::vector<int> dashed_slot;

    int vertex_of(int copy, int pv) const { return copy * piece_n + pv; }
    int copy_of(int vertex) const { return vertex / piece_n; }
    int piece_vertex(int vertex) const { return vertex % piece_n; }
};

Truncation build_truncation(const PieceTemplate& t, int R, std::size_t max_copies = 200000);

// Extendibility table for normal-closure templates: ordered pairs
// (dashed x1 dart, dashed x2 dart) admitting covers of the piece matching
// both endpoints, minus the exceptional set.
struct ExtTable {
    std::vector<CoveringMap> covers;               // 𝒫 = coverings piece -> y1
    std::vector<std::vector<char>> extendible;      // [x1 dart][x2 dart]
    std::vector<std::pair<int, int>> exceptional;   // the excluded pairs in force
    bool is_extendible(int d1, int d2) const { return extendible[d1][d2]; }
};

ExtTable ext_table(const PieceTemplate& t, bool with_exceptional = true);

// Lemma-style link analysis: for every (x2 vertex v, cover p) decide
// (1) whether an extendible bijection lk_d(v) -> lk_d(p(v)) exists, and
// (2) for every extendible pair (e1, e2) with e2 based at v and e1 at p(v),
//     whether an extendible bijection with sigma(e2) = e1 exists.
struct LinkBijectionReport {
    struct Failure {
        int v;        // x2 vertex
        int p_index;  // index into table.covers
        int part;     // 1 or 2
        int e1 = -1, e2 = -1;  // offending pair for part 2
    };
    bool ok1 = true, ok2 = true;
    std::vector<Failure> failures;
    int pairs_checked = 0;
};

LinkBijectionReport check_link_bijections(const PieceTemplate& t, const ExtTable& table);

// Radial construction of a morphism truncation -> x_target that is a covering
// at every interior vertex.
struct RadialCoverResult {
    Morphism q;
    bool complete = false;
    std::string blocked_at;
    int interior_vertices = 0;
    int star_bijective = 0;  // among interior vertices
    // Per copy: index into the cover list 𝒫 (normal-closure target 1), or
    // 0/1 for untwisted/twisted restriction (pattern target 2), or 0.
    std::vector<int> copy_restriction;
};

RadialCoverResult radial_cover(const Truncation& tr, int which_target);

// Homogeneous counting systems and their exact verdicts.
struct CountingCertificate {
    std::vector<std::string> variables;
    struct Equation {
        std::vector<long long> coeffs;  // Σ c_i x_i = 0
        std::string tag;                // what is being counted
    };
    std::vector<Equation> equations;
    bool only_zero = false;
    std::vector<std::string> witness;  // nonzero solution as "p/q" strings, if feasible
};

enum class CountingScenario { example_4_1, sec4, sec5 };
CountingCertificate counting_certificate(CountingScenario s);
// Decide an explicitly given system.
CountingCertificate decide_certificate(CountingCertificate c);

// Machine-derivation of the two-variable system for the normal-closure
// template by enumerating extendible link bijections; reproduces the
// coefficient matrix [[3,-2],[2,-2]] up to row order.
CountingCertificate derive_sec5_equations(const PieceTemplate& t);

// Bounded exhaustive search for a finite piece-graph with <= N copies of the
// piece that is covered by the infinite assembly and covers x1 (and x2 for
// the pattern rule).  Returns the counterexample graph if one exists.
struct SearchResult {
    bool found = false;
    GraphPtr counterexample;
    long long nodes_explored = 0;
};

SearchResult exhaustive_search(const PieceTemplate& t, int N);

}  // namespace covlab
