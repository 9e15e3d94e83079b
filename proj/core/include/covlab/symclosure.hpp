#pragma once

#include <vector>

#include "covlab/morphism.hpp"

namespace covlab {

// R-symmetry restricted closure of the subgroup generated by `gens` inside
// Aut(g): automorphisms that agree with some generated element on the R-ball
// around every vertex.  Agreement on a ball means equal vertex images on all
// vertices within distance R and equal dart images on darts of edges with
// both endpoints in the ball.
struct SymClosure {
    GraphPtr ambient;
    std::vector<Morphism> generators;
    int radius = 0;
    std::vector<Morphism> elements;  // subset of Aut(g), deterministic order
    std::vector<Morphism> subgroup;  // ⟨generators⟩, for reference
};

SymClosure symmetry_restricted_closure(GraphPtr g, const std::vector<Morphism>& gens, int R);

// Independent computation via the intersection formula ∩_x H·Fix(B_R(x));
// returns the element list in the same canonical order.
std::vector<Morphism> symmetry_restricted_closure_dual(GraphPtr g,
                                                       const std::vector<Morphism>& gens,
                                                       int R);

// Closure of a generator list under composition and inverse.
std::vector<Morphism> generated_subgroup(GraphPtr g, const std::vector<Morphism>& gens);

}  // namespace covlab
