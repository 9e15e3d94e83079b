#pragma once

#include <vector>

#include "covlab/graph.hpp"

namespace covlab {

// Closed dart sequence (e_1,...,e_n) with terminus(e_i) = origin(e_{i+1})
// cyclically.  Reduced means e_{i+1} != reversal(e_i) for all i (mod n).
// Equality is up to rotation and reversal; `darts` is stored in canonical
// form: the lexicographically minimal rotation of the smaller of the
// sequence and its reversal.
struct Circuit {
    std::vector<int> darts;

    bool operator==(const Circuit& o) const { return darts == o.darts; }
    bool operator<(const Circuit& o) const { return darts < o.darts; }
};

// Canonical representative of the rotation+reversal class of a dart sequence.
Circuit canonical_circuit(const std::vector<int>& darts);

bool is_reduced_circuit(const Graph& g, const std::vector<int>& darts);

// All reduced circuits of length exactly n, one canonical representative per
// rotation+reversal class, sorted.
std::vector<Circuit> reduced_circuits(const Graph& g, int n);

}  // namespace covlab
