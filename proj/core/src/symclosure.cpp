#include "covlab/symclosure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "covlab/iso.hpp"

namespace covlab {

namespace {

using MapKey = std::pair<std::vector<int>, std::vector<int>>;

MapKey key_of(const Morphism& m) { return {m.vmap, m.dmap}; }

// Vertices within distance R of x, plus darts of edges with both endpoints
// inside the ball.
struct Ball {
    std::vector<int> verts;
    std::vector<int> darts;
};

Ball ball_at(const Graph& g, int x, int R) {
    Ball b;
    auto dist = g.distances_from(x);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (dist[v] >= 0 && dist[v] <= R) b.verts.push_back(v);
    for (int d = 0; d < g.num_darts(); ++d) {
        int u = g.origin(d), v = g.terminus(d);
        if (dist[u] >= 0 && dist[u] <= R && dist[v] >= 0 && dist[v] <= R) b.darts.push_back(d);
    }
    return b;
}

bool agree_on_ball(const Morphism& a, const Morphism& b, const Ball& ball) {
    for (int v : ball.verts)
        if (a.vmap[v] != b.vmap[v]) return false;
    for (int d : ball.darts)
        if (a.dmap[d] != b.dmap[d]) return false;
    return true;
}

}  // namespace

std::vector<Morphism> generated_subgroup(GraphPtr g, const std::vector<Morphism>& gens) {
    std::vector<Morphism> elems{identity(g)};
    std::set<MapKey> seen{key_of(elems[0])};
    for (const Morphism& m : gens) {
        std::string why;
        if (!m.valid(&why) || !m.is_bijective() || m.src.get() != g.get() || m.dst.get() != g.get())
            throw std::invalid_argument("generated_subgroup: generator is not an automorphism: " + why);
    }
    std::vector<Morphism> frontier = elems;
    while (!frontier.empty()) {
        std::vector<Morphism> next;
        for (const Morphism& h : frontier)
            for (const Morphism& s : gens)
                for (const Morphism& prod : {compose(s, h), compose(inverse(s), h)})
                    if (seen.insert(key_of(prod)).second) {
                        elems.push_back(prod);
                        next.push_back(prod);
                    }
        frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end(),
              [](const Morphism& a, const Morphism& b) { return key_of(a) < key_of(b); });
    return elems;
}

SymClosure symmetry_restricted_closure(GraphPtr g, const std::vector<Morphism>& gens, int R) {
    SymClosure out;
    out.ambient = g;
    out.generators = gens;
    out.radius = R;
    out.subgroup = generated_subgroup(g, gens);
    std::vector<Morphism> aut = automorphisms(g);
    std::sort(aut.begin(), aut.end(),
              [](const Morphism& a, const Morphism& b) { return key_of(a) < key_of(b); });
    std::vector<Ball> balls;
    for (int x = 0; x < g->num_vertices(); ++x) balls.push_back(ball_at(*g, x, R));
    for (const Morphism& a : aut) {
        bool member = true;
        for (const Ball& b : balls) {
            bool found = false;
            for (const Morphism& h : out.subgroup)
                if (agree_on_ball(a, h, b)) {
                    found = true;
                    break;
                }
            if (!found) {
                member = false;
                break;
            }
        }
        if (member) out.elements.push_back(a);
    }
    return out;
}

std::vector<Morphism> symmetry_restricted_closure_dual(GraphPtr g,
                                                       const std::vector<Morphism>& gens,
                                                       int R) {
    std::vector<Morphism> H = generated_subgroup(g, gens);
    std::vector<Morphism> aut = automorphisms(g);
    std::sort(aut.begin(), aut.end(),
              [](const Morphism& a, const Morphism& b) { return key_of(a) < key_of(b); });
    std::set<MapKey> result;
    for (const Morphism& a : aut) result.insert(key_of(a));
    Morphism id = identity(g);
    for (int x = 0; x < g->num_vertices(); ++x) {
        Ball b = ball_at(*g, x, R);
        // Fix(B_R(x)) = automorphisms agreeing with the identity on the ball
        std::vector<Morphism> fix;
        for (const Morphism& a : aut)
            if (agree_on_ball(a, id, b)) fix.push_back(a);
        std::set<MapKey> prod;  // H · Fix(B_R(x))
        for (const Morphism& h : H)
            for (const Morphism& f : fix) prod.insert(key_of(compose(h, f)));
        std::set<MapKey> keep;
        for (const MapKey& k : result)
            if (prod.count(k)) keep.insert(k);
        result = std::move(keep);
    }
    std::vector<Morphism> out;
    for (const Morphism& a : aut)
        if (result.count(key_of(a))) out.push_back(a);
    return out;
}

}  // namespace covlab
