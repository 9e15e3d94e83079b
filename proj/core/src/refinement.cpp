#include "covlab/refinement.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace covlab {

namespace {

// One splitting pass: new class = (old class, multiset of (neighbor class,
// kind) over the star).  `use_labels` additionally seeds with vertex labels.
std::vector<int> refine_once(const Graph& g, const std::vector<int>& cls) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, std::vector<int>> buckets;
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<std::pair<int, int>> key;
        for (int d : g.star(v))
            key.emplace_back(cls[g.terminus(d)], static_cast<int>(g.kind(d)));
        std::sort(key.begin(), key.end());
        buckets[{cls[v], std::move(key)}].push_back(v);
    }
    std::vector<int> out(g.num_vertices());
    int id = 0;
    for (auto& [key, vs] : buckets) {
        for (int v : vs) out[v] = id;
        ++id;
    }
    return out;
}

int num_classes_of(const std::vector<int>& cls) {
    return cls.empty() ? 0 : 1 + *std::max_element(cls.begin(), cls.end());
}

std::vector<int> stable_partition_impl(const Graph& g, bool use_labels) {
    std::vector<int> cls(g.num_vertices(), 0);
    if (use_labels) {
        std::map<std::string, int> by_label;
        for (int v = 0; v < g.num_vertices(); ++v) {
            auto [it, _] = by_label.try_emplace(g.vertex(v).label,
                                                static_cast<int>(by_label.size()));
            cls[v] = it->second;
        }
    }
    int k = num_classes_of(cls);
    for (;;) {
        std::vector<int> next = refine_once(g, cls);
        int k2 = num_classes_of(next);
        cls = std::move(next);
        if (k2 == k) break;
        k = k2;
    }
    return cls;
}

}  // namespace

std::vector<int> stable_partition(const Graph& g) {
    return stable_partition_impl(g, /*use_labels=*/true);
}

DegreeRefinement degree_refinement(const Graph& g) {
    if (!g.is_connected())
        throw std::invalid_argument("degree_refinement: graph must be connected");
    DegreeRefinement r;
    // Labels are ignored: the refinement certifies the shape of the universal
    // covering tree, which sees only degrees and edge kinds.
    r.partition = stable_partition_impl(g, /*use_labels=*/false);
    r.num_classes = num_classes_of(r.partition);
    int k = r.num_classes;
    r.class_sizes.assign(k, 0);
    for (int v = 0; v < g.num_vertices(); ++v) r.class_sizes[r.partition[v]]++;
    r.matrix.assign(k, std::vector<std::vector<int>>(k, {0, 0}));
    // Dart counts from one representative per class; equitability makes the
    // choice immaterial (asserted below).
    std::vector<int> rep(k, -1);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (rep[r.partition[v]] < 0) rep[r.partition[v]] = v;
    for (int i = 0; i < k; ++i)
        for (int d : g.star(rep[i]))
            r.matrix[i][r.partition[g.terminus(d)]][g.kind(d) == EdgeKind::dashed]++;
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<std::vector<int>> row(k, std::vector<int>{0, 0});
        for (int d : g.star(v))
            row[r.partition[g.terminus(d)]][g.kind(d) == EdgeKind::dashed]++;
        if (row != r.matrix[r.partition[v]])
            throw std::logic_error("degree_refinement: partition not equitable");
    }

    // Canonical class order: iterated signature ranking over the quotient
    // matrix (class sizes excluded so that e.g. all cycles agree).
    std::vector<int> rank(k, 0);
    for (int round = 0; round <= k; ++round) {
        std::vector<std::string> sig(k);
        for (int i = 0; i < k; ++i) {
            std::vector<std::string> parts;
            for (int j = 0; j < k; ++j)
                if (r.matrix[i][j][0] || r.matrix[i][j][1])
                    parts.push_back(std::to_string(rank[j]) + ":" +
                                    std::to_string(r.matrix[i][j][0]) + "," +
                                    std::to_string(r.matrix[i][j][1]));
            std::sort(parts.begin(), parts.end());
            sig[i] = std::to_string(rank[i]) + "|";
            for (auto& p : parts) sig[i] += p + ";";
        }
        std::vector<std::string> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(k);
        for (int i = 0; i < k; ++i)
            next[i] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
        if (next == rank) break;
        rank = std::move(next);
    }
    // Distinct classes of the coarsest equitable partition always separate
    // under full signature iteration; ties would mean a coarser equitable
    // partition exists.
    {
        std::vector<int> sorted_ranks = rank;
        std::sort(sorted_ranks.begin(), sorted_ranks.end());
        for (int i = 0; i + 1 < k; ++i)
            if (sorted_ranks[i] == sorted_ranks[i + 1])
                throw std::logic_error("degree_refinement: canonical rank tie");
    }
    std::vector<int> order(k);  // order[new] = old class id
    for (int i = 0; i < k; ++i) order[rank[i]] = i;
    std::string form = std::to_string(k) + ";";
    for (int a = 0; a < k; ++a) {
        form += "[";
        for (int b = 0; b < k; ++b) {
            const auto& m = r.matrix[order[a]][order[b]];
            form += std::to_string(m[0]) + "," + std::to_string(m[1]) + ";";
        }
        form += "]";
    }
    r.canonical_form = form;
    return r;
}

}  // namespace covlab
