#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covlab/graph.hpp"

namespace covlab {

// Vertex + dart map between graphs.  dmap must commute with origin and
// reversal and preserve edge kind; vmap agrees with dmap on non-isolated
// vertices.
struct Morphism {
    GraphPtr src;
    GraphPtr dst;
    std::vector<int> vmap;  // size = src->num_vertices()
    std::vector<int> dmap;  // size = src->num_darts()

    bool valid(std::string* why = nullptr) const;
    bool is_bijective() const;
};

Morphism identity(GraphPtr g);
// Composite applying f first, then g; requires f.dst == g.src structurally.
Morphism compose(const Morphism& g, const Morphism& f);
// Inverse of a bijective morphism.
Morphism inverse(const Morphism& f);
bool same_map(const Morphism& a, const Morphism& b);

}  // namespace covlab
