#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "covlab/covering.hpp"
#include "covlab/linear.hpp"
#include "covlab/pieces.hpp"

namespace covlab {

// The finite gluing system of a normal-closure template against one of its
// quotient targets.  Nonzero nonnegative solutions correspond exactly to
// weighted families of piece copies that close up into a finite intermediate
// cover of the target; infeasibility certifies that no such cover exists.
//
// Variables are factored instead of enumerating full piece maps: one weight
// per accepted vertex-image class of piece maps, plus one count per admissible
// (dashed stub, target dart) assignment.  Per-vertex marginal equations tie
// the stub counts to the class weights (equal row and column sums), and face
// equations identify the two ends of each dashed edge type.  A weighted family
// of full maps induces such counts by forgetting, and conversely any
// nonnegative solution splits back into full maps by decomposing each marginal
// matrix into bijections, so the factoring loses nothing.
struct GluingSystem {
    const PieceTemplate* tmpl = nullptr;
    int which_target = 0;  // 1 or 2
    GraphPtr target;       // x1 or x2
    GraphPtr solid_quotient;  // y1 (target 1) or the piece itself (target 2)

    std::vector<CoveringMap> covers;        // piece -> solid_quotient
    std::vector<std::vector<int>> classes;  // accepted vertex-image classes
    std::vector<int> class_rep;             // index into covers realizing each class

    // admissible[i][d]: target dashed dart i is a possible image for the stub
    // that lifts dashed x2 dart d, after running the extendability refinement
    // to its fixed point on both sides of the edge.
    std::vector<std::vector<char>> admissible;
    int stabilization_radius = -1;  // first R with Adm_{R+1} = Adm_R; -1 = guard hit
    bool degenerate = false;        // some face type has an empty candidate side

    // Variable layout: class weights first, then stub counts in nu_vars order.
    std::vector<std::pair<int, int>> nu_vars;  // (x2 dashed dart, target dashed dart)
    std::vector<std::string> variables;
    std::vector<std::vector<Rat>> equations;  // homogeneous rows over `variables`

    int num_classes() const { return static_cast<int>(classes.size()); }
    int num_variables() const { return static_cast<int>(variables.size()); }
    int var_of_class(int c) const { return c; }
    // -1 when the pair is not admissible.
    int var_of_nu(int x2_dart, int target_dart) const;
};

// Builds the system for x1 (which_target == 1) or x2 (which_target == 2).
// Acceptance of piece maps and stub assignments uses extendability to radius R
// with a stabilization check, iterated to a fixed point (guard: max_radius).
// Throws std::invalid_argument for pattern-rule templates.
GluingSystem derive_gluing_system(const PieceTemplate& t, int which_target,
                                  int max_radius = 16);

struct Weights {
    std::vector<Rat> omega;                 // per class
    std::map<std::pair<int, int>, Rat> nu;  // (x2 dashed dart, target dart) -> count

    bool nonzero() const;
    bool is_integral() const;
};

Weights weights_from_vector(const GluingSystem& sys, const std::vector<Rat>& x);
std::vector<Rat> weights_to_vector(const GluingSystem& sys, const Weights& w);

// Every equation re-checked exactly; also requires nonnegativity throughout.
bool check_weights(const GluingSystem& sys, const Weights& w);

// Nonzero nonnegative feasibility of the system, exact.
LinearSolveResult solve_system(const GluingSystem& sys);

// Multiplies by the least common multiple of all denominators.
Weights integer_scale(const Weights& w);

// The intermediate cover assembled from an integer solution: one solid copy of
// the piece per unit of class weight, dashed edges wired between matching stub
// counts (deterministic lexicographic matching).
struct AssembledCover {
    GraphPtr yhat;
    GraphPtr z;         // one vertex per copy, one edge per dashed yhat edge
    Morphism psi;       // yhat -> target
    Morphism chart;     // yhat -> x2 via copy charts (the coveredness certificate)
    int piece_n = 0;
    int num_copies = 0;
    std::vector<int> copy_class;  // per copy
    std::vector<int> copy_cover;  // per copy: index into sys.covers
    // Per copy, per dashed x2 dart d: the yhat dart leaving vertex
    // (copy, origin(d)) on the stub that lifts d.  -1 on solid darts.
    std::vector<std::vector<int>> stub_dart;

    int vertex_of(int copy, int pv) const { return copy * piece_n + pv; }
};

// Requires a nonzero integral solution of the system (throws otherwise).
AssembledCover assemble_cover(const GluingSystem& sys, const Weights& w);

struct IntermediateReport {
    bool covering_ok = false;          // psi is a covering of the target
    bool truncation_ok = false;        // radius-R truncation maps over yhat,
    int interior_checked = 0;          //   star-bijectively at interior vertices
    bool solid_components_ok = false;  // solid components of yhat ~ the piece,
                                       //   and the chart yhat -> x2 is a covering
    bool z_covers_quotient = false;    // z covers the one-vertex dashed quotient
    std::string witness;

    bool all_ok() const {
        return covering_ok && truncation_ok && solid_components_ok && z_covers_quotient;
    }
};

IntermediateReport verify_intermediate(const AssembledCover& ac, const PieceTemplate& t,
                                       int R);

// Reads the weights back off an assembled cover (round-trip inverse of
// assemble_cover up to the order of copies).
Weights weights_from_cover(const AssembledCover& ac, const GluingSystem& sys);

// Types an explicit cover of x2 whose solid components are isomorphic to the
// piece (target-2 systems only); throws std::invalid_argument on an
// untypeable component.
Weights weights_from_cover(const CoveringMap& q, const GluingSystem& sys);

// Interchange formats: pieces/faces with left-right candidate sets, and
// solutions with exact rationals rendered as "p/q".
std::string gluing_system_json(const GluingSystem& sys);
std::string weights_json(const GluingSystem& sys, const Weights& w);

}  // namespace covlab
