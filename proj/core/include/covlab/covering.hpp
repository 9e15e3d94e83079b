#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covlab/morphism.hpp"

namespace covlab {

struct CoveringMap {
    Morphism f;
    int degree = 0;
};

// Certifies that f restricts to a bijection on every vertex star and that
// vertex fibers have uniform size.  On failure returns nullopt and fills
// `witness` (vertex/dart ids) when provided.
std::optional<CoveringMap> verify_covering(const Morphism& f, std::string* witness = nullptr);

// All covering maps top -> base as exact maps (not modulo automorphism),
// deterministic order.  top must be connected.
std::vector<CoveringMap> enumerate_coverings(GraphPtr top, GraphPtr base,
                                             std::size_t limit = 1u << 20);

// All connected degree-d covers of a connected base, up to isomorphism of
// covers.  Built by assigning degree-d permutation voltages to edges outside
// a spanning tree, with conjugation dedup plus a cover-isomorphism filter.
struct Cover {
    GraphPtr total;
    CoveringMap map;  // total -> base
};
std::vector<Cover> enumerate_covers(GraphPtr base, int d, std::size_t limit = 1u << 20);

struct DeckGroup {
    CoveringMap cover;
    std::vector<Morphism> elements;
    bool is_regular = false;
};

// Deck transformations of a verified covering with connected source.
DeckGroup deck_group(const CoveringMap& f);

// Fiber product of two coverings with a common target.
struct FiberProduct {
    GraphPtr total;
    Morphism to_first;   // projections (coverings onto their images)
    Morphism to_second;
};
FiberProduct fiber_product(const CoveringMap& f1, const CoveringMap& f2);

// Searches connected covers of g1 of degree 1..d_max for one that also covers
// g2.  Degree-refinement forms are compared first; a mismatch short-circuits
// to nullopt.
struct CommonCover {
    GraphPtr total;
    CoveringMap to_first;
    CoveringMap to_second;
};
std::optional<CommonCover> find_common_cover(GraphPtr g1, GraphPtr g2, int d_max);

}  // namespace covlab
