#include "covlab/morphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace covlab {

bool Morphism::valid(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!src || !dst) return fail("null graph");
    if (static_cast<int>(vmap.size()) != src->num_vertices()) return fail("vmap size");
    if (static_cast<int>(dmap.size()) != src->num_darts()) return fail("dmap size");
    for (int v = 0; v < src->num_vertices(); ++v)
        if (vmap[v] < 0 || vmap[v] >= dst->num_vertices())
            return fail("vmap out of range at " + src->vertex(v).id);
    for (int d = 0; d < src->num_darts(); ++d) {
        int fd = dmap[d];
        if (fd < 0 || fd >= dst->num_darts())
            return fail("dmap out of range at " + src->dart_id(d));
        if (dmap[Graph::reversal(d)] != Graph::reversal(fd))
            return fail("dmap does not commute with reversal at " + src->dart_id(d));
        if (dst->origin(fd) != vmap[src->origin(d)])
            return fail("dmap does not commute with origin at " + src->dart_id(d));
        if (dst->kind(fd) != src->kind(d))
            return fail("dmap does not preserve kind at " + src->dart_id(d));
    }
    return true;
}

bool Morphism::is_bijective() const {
    if (src->num_vertices() != dst->num_vertices() || src->num_darts() != dst->num_darts())
        return false;
    std::vector<char> hitv(dst->num_vertices(), 0), hitd(dst->num_darts(), 0);
    for (int x : vmap) hitv[x] = 1;
    for (int x : dmap) hitd[x] = 1;
    return std::all_of(hitv.begin(), hitv.end(), [](char c) { return c; }) &&
           std::all_of(hitd.begin(), hitd.end(), [](char c) { return c; });
}

Morphism identity(GraphPtr g) {
    Morphism m;
    m.src = g;
    m.dst = g;
    m.vmap.resize(g->num_vertices());
    m.dmap.resize(g->num_darts());
    for (int v = 0; v < g->num_vertices(); ++v) m.vmap[v] = v;
    for (int d = 0; d < g->num_darts(); ++d) m.dmap[d] = d;
    return m;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.dst.get() != g.src.get())
        throw std::invalid_argument("compose: middle graphs differ");
    Morphism m;
    m.src = f.src;
    m.dst = g.dst;
    m.vmap.resize(f.vmap.size());
    m.dmap.resize(f.dmap.size());
    for (size_t v = 0; v < f.vmap.size(); ++v) m.vmap[v] = g.vmap[f.vmap[v]];
    for (size_t d = 0; d < f.dmap.size(); ++d) m.dmap[d] = g.dmap[f.dmap[d]];
    return m;
}

Morphism inverse(const Morphism& f) {
    if (!f.is_bijective()) throw std::invalid_argument("inverse: morphism not bijective");
    Morphism m;
    m.src = f.dst;
    m.dst = f.src;
    m.vmap.assign(f.dst->num_vertices(), -1);
    m.dmap.assign(f.dst->num_darts(), -1);
    for (size_t v = 0; v < f.vmap.size(); ++v) m.vmap[f.vmap[v]] = static_cast<int>(v);
    for (size_t d = 0; d < f.dmap.size(); ++d) m.dmap[f.dmap[d]] = static_cast<int>(d);
    return m;
}

bool same_map(const Morphism& a, const Morphism& b) {
    return a.vmap == b.vmap && a.dmap == b.dmap;
}

}  // namespace covlab
