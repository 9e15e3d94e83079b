#pragma once

#include <optional>
#include <vector>

#include "covlab/morphism.hpp"

namespace covlab {

// All kind- and label-respecting isomorphisms src -> dst (vertex and dart
// bijections), deterministic order.  Throws std::length_error when the result
// would exceed `limit` elements.
std::vector<Morphism> enumerate_isomorphisms(GraphPtr src, GraphPtr dst,
                                             std::size_t limit = 1u << 20,
                                             bool first_only = false);

// First isomorphism in canonical search order, or nullopt.
std::optional<Morphism> isomorphic(GraphPtr g1, GraphPtr g2);

// The full automorphism group as an explicit list (identity first is not
// guaranteed; the identity is always present).
std::vector<Morphism> automorphisms(GraphPtr g, std::size_t limit = 1u << 20);

}  // namespace covlab
