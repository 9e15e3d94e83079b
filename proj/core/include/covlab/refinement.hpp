#pragma once

#include <string>
#include <vector>

#include "covlab/graph.hpp"

namespace covlab {

// Degree refinement: the coarsest vertex partition stable under counting
// darts into each class (split by edge kind).  Two connected finite graphs
// have isomorphic universal covering trees iff their canonical forms agree.
struct DegreeRefinement {
    std::vector<int> partition;                       // vertex -> class id
    int num_classes = 0;
    std::vector<int> class_sizes;                     // per class
    std::vector<std::vector<std::vector<int>>> matrix;  // [i][j] = {solid, dashed} dart count
    std::string canonical_form;                       // deterministic signature

    bool operator==(const DegreeRefinement& o) const {
        return canonical_form == o.canonical_form;
    }
};

// g must be connected (throws std::invalid_argument otherwise).
// Initial partition refines by vertex label; iterate to a fixed point.
DegreeRefinement degree_refinement(const Graph& g);

// Stable partition only (no connectivity requirement, no canonicalization);
// used as the seed for isomorphism search.
std::vector<int> stable_partition(const Graph& g);

}  // namespace covlab
