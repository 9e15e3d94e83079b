#include "covlab/circuits.hpp"

#include <algorithm>
#include <set>

namespace covlab {

namespace {

std::vector<int> min_rotation(const std::vector<int>& s) {
    int n = static_cast<int>(s.size());
    std::vector<int> best = s;
    std::vector<int> cur(n);
    for (int r = 1; r < n; ++r) {
        for (int i = 0; i < n; ++i) cur[i] = s[(i + r) % n];
        if (cur < best) best = cur;
    }
    return best;
}

}  // namespace

Circuit canonical_circuit(const std::vector<int>& darts) {
    // Reversal of a circuit traverses the reversed darts in the opposite
    // cyclic order.
    std::vector<int> rev(darts.size());
    int n = static_cast<int>(darts.size());
    for (int i = 0; i < n; ++i) rev[i] = Graph::reversal(darts[n - 1 - i]);
    std::vector<int> a = min_rotation(darts);
    std::vector<int> b = min_rotation(rev);
    return Circuit{a < b ? a : b};
}

bool is_reduced_circuit(const Graph& g, const std::vector<int>& darts) {
    int n = static_cast<int>(darts.size());
    if (n == 0) return false;
    for (int i = 0; i < n; ++i) {
        int d = darts[i], next = darts[(i + 1) % n];
        if (d < 0 || d >= g.num_darts()) return false;
        if (g.terminus(d) != g.origin(next)) return false;
        if (next == Graph::reversal(d)) return false;
    }
    return true;
}

std::vector<Circuit> reduced_circuits(const Graph& g, int n) {
    std::set<Circuit> found;
    std::vector<int> path;
    path.reserve(n);

    auto extend = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            if (g.terminus(path.back()) == g.origin(path.front()) &&
                path.front() != Graph::reversal(path.back()))
                found.insert(canonical_circuit(path));
            return;
        }
        int at = g.terminus(path.back());
        for (int d : g.star(at)) {
            if (d == Graph::reversal(path.back())) continue;
            path.push_back(d);
            self(self, depth + 1);
            path.pop_back();
        }
    };

    for (int d0 = 0; d0 < g.num_darts(); ++d0) {
        path.push_back(d0);
        if (n == 1) {
            // length-1 circuit: a loop dart with terminus == origin and not
            // its own reversal (always true), reduced iff d != rev(d) cyclically
            if (g.terminus(d0) == g.origin(d0) && d0 != Graph::reversal(d0))
                found.insert(canonical_circuit(path));
        } else {
            extend(extend, 1);
        }
        path.pop_back();
    }
    return std::vector<Circuit>(found.begin(), found.end());
}

}  // namespace covlab
