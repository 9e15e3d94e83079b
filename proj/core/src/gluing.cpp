#include "covlab/gluing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "covlab/iso.hpp"

namespace covlab {

namespace {

using boost::multiprecision::cpp_int;

std::vector<int> dashed_darts_at(const Graph& g, int v) {
    std::vector<int> out;
    for (int d : g.star(v))
        if (g.kind(d) == EdgeKind::dashed) out.push_back(d);
    return out;
}

// Perfect matching rows -> cols (Kuhn's augmenting paths); both sides must be
// saturated, so the sides must have equal size.
bool perfect_matching(const std::vector<std::vector<char>>& allowed,
                      std::vector<int>* row_match = nullptr) {
    int nr = static_cast<int>(allowed.size());
    int nc = nr == 0 ? 0 : static_cast<int>(allowed[0].size());
    if (nr != nc) return false;
    std::vector<int> col_of_row(nr, -1), row_of_col(nc, -1);
    std::vector<char> seen;
    std::function<bool(int)> try_row = [&](int r) -> bool {
        for (int c = 0; c < nc; ++c) {
            if (!allowed[r][c] || seen[c]) continue;
            seen[c] = 1;
            if (row_of_col[c] < 0 || try_row(row_of_col[c])) {
                row_of_col[c] = r;
                col_of_row[r] = c;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < nr; ++r) {
        seen.assign(nc, 0);
        if (!try_row(r)) return false;
    }
    if (row_match) *row_match = col_of_row;
    return true;
}

struct FaceType {
    int x2_edge;      // dashed x2 edge index
    int image_dart;   // target dashed dart assigned to dart 2*x2_edge
    std::vector<int> left, right;  // candidate class indices
};

// Candidate classes for one side of a face type: classes whose copy can carry
// the forced stub assignment with every other stub still extendible onward.
std::vector<int> side_candidates(const GluingSystem& sys, int forced_stub,
                                 int forced_image) {
    const Graph& x2 = *sys.tmpl->x2;
    const Graph& tg = *sys.target;
    const Graph& piece = *sys.tmpl->piece;
    int v0 = x2.origin(forced_stub);
    std::vector<int> out;
    for (int c = 0; c < sys.num_classes(); ++c) {
        const std::vector<int>& vm = sys.classes[c];
        if (vm[v0] != tg.origin(forced_image)) continue;
        bool ok = true;
        for (int u = 0; u < piece.num_vertices() && ok; ++u) {
            std::vector<int> rows = dashed_darts_at(x2, u);
            std::vector<int> cols = dashed_darts_at(tg, vm[u]);
            if (rows.size() != cols.size()) {
                ok = false;
                break;
            }
            std::vector<std::vector<char>> allowed(rows.size(),
                                                   std::vector<char>(cols.size(), 0));
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t cc = 0; cc < cols.size(); ++cc) {
                    if (u == v0 && rows[r] == forced_stub)
                        allowed[r][cc] = cols[cc] == forced_image;
                    else
                        allowed[r][cc] =
                            sys.admissible[Graph::reversal(cols[cc])]
                                          [Graph::reversal(rows[r])];
                }
            ok = perfect_matching(allowed);
        }
        if (ok) out.push_back(c);
    }
    return out;
}

std::vector<FaceType> face_types(const GluingSystem& sys) {
    const Graph& x2 = *sys.tmpl->x2;
    std::vector<FaceType> out;
    for (const auto& [delta, i] : sys.nu_vars) {
        if (delta & 1) continue;  // one face type per edge orientation pair
        FaceType f;
        f.x2_edge = Graph::edge_of(delta);
        f.image_dart = i;
        f.left = side_candidates(sys, delta, i);
        f.right = side_candidates(sys, Graph::reversal(delta), Graph::reversal(i));
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

int GluingSystem::var_of_nu(int x2_dart, int target_dart) const {
    for (std::size_t k = 0; k < nu_vars.size(); ++k)
        if (nu_vars[k].first == x2_dart && nu_vars[k].second == target_dart)
            return num_classes() + static_cast<int>(k);
    return -1;
}

GluingSystem derive_gluing_system(const PieceTemplate& t, int which_target,
                                  int max_radius) {
    if (t.rule != AssemblyRule::normal_closure)
        throw std::invalid_argument(
            "derive_gluing_system: normal-closure templates only");
    if (which_target != 1 && which_target != 2)
        throw std::invalid_argument("derive_gluing_system: target must be 1 or 2");

    GluingSystem sys;
    sys.tmpl = &t;
    sys.which_target = which_target;
    sys.target = which_target == 1 ? t.x1 : t.x2;
    sys.solid_quotient = which_target == 1 ? t.y1 : t.piece;
    sys.covers = enumerate_coverings(t.piece, sys.solid_quotient);

    const Graph& piece = *t.piece;
    const Graph& x2 = *t.x2;
    const Graph& tg = *sys.target;
    int pn = piece.num_vertices();

    // Distinct vertex-image classes among the covers, lexicographic order.
    std::map<std::vector<int>, int> first_rep;
    for (std::size_t i = 0; i < sys.covers.size(); ++i)
        first_rep.emplace(sys.covers[i].f.vmap, static_cast<int>(i));
    std::vector<std::vector<int>> all_classes;
    std::vector<int> all_reps;
    for (const auto& [vm, rep] : first_rep) {
        all_classes.push_back(vm);
        all_reps.push_back(rep);
    }

    // Extendability fixed point on pairs (target dashed dart, dashed stub):
    // a pair survives radius R+1 when some class places the stub's copy so
    // that every stub matches to an image whose far side survived radius R.
    std::vector<std::vector<char>> adm(tg.num_darts(),
                                       std::vector<char>(x2.num_darts(), 0));
    for (int i = 0; i < tg.num_darts(); ++i) {
        if (tg.kind(i) != EdgeKind::dashed) continue;
        for (int d = 0; d < x2.num_darts(); ++d) {
            if (x2.kind(d) != EdgeKind::dashed) continue;
            for (const auto& vm : all_classes)
                if (vm[x2.origin(d)] == tg.origin(i)) {
                    adm[i][d] = 1;
                    break;
                }
        }
    }
    auto survives = [&](const std::vector<std::vector<char>>& cur, int i, int d) {
        int v0 = x2.origin(d);
        for (const auto& vm : all_classes) {
            if (vm[v0] != tg.origin(i)) continue;
            bool ok = true;
            for (int u = 0; u < pn && ok; ++u) {
                std::vector<int> rows = dashed_darts_at(x2, u);
                std::vector<int> cols = dashed_darts_at(tg, vm[u]);
                if (rows.size() != cols.size()) {
                    ok = false;
                    break;
                }
                std::vector<std::vector<char>> allowed(
                    rows.size(), std::vector<char>(cols.size(), 0));
                for (std::size_t r = 0; r < rows.size(); ++r)
                    for (std::size_t c = 0; c < cols.size(); ++c) {
                        if (u == v0 && rows[r] == d)
                            allowed[r][c] = cols[c] == i;  // the entering stub
                        else
                            allowed[r][c] = cur[Graph::reversal(cols[c])]
                                               [Graph::reversal(rows[r])];
                    }
                ok = perfect_matching(allowed);
            }
            if (ok) return true;
        }
        return false;
    };
    sys.stabilization_radius = -1;
    for (int R = 0; R <= max_radius; ++R) {
        auto next = adm;
        bool changed = false;
        for (int i = 0; i < tg.num_darts(); ++i)
            for (int d = 0; d < x2.num_darts(); ++d)
                if (adm[i][d] && !survives(adm, i, d)) {
                    next[i][d] = 0;
                    changed = true;
                }
        if (!changed) {
            sys.stabilization_radius = R;
            break;
        }
        adm = std::move(next);
    }
    sys.admissible = adm;

    // Accepted classes: a root copy of the class extends in every direction.
    for (std::size_t c = 0; c < all_classes.size(); ++c) {
        const std::vector<int>& vm = all_classes[c];
        bool ok = true;
        for (int u = 0; u < pn && ok; ++u) {
            std::vector<int> rows = dashed_darts_at(x2, u);
            std::vector<int> cols = dashed_darts_at(tg, vm[u]);
            if (rows.size() != cols.size()) {
                ok = false;
                break;
            }
            std::vector<std::vector<char>> allowed(rows.size(),
                                                   std::vector<char>(cols.size(), 0));
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t cc = 0; cc < cols.size(); ++cc)
                    allowed[r][cc] = adm[Graph::reversal(cols[cc])]
                                        [Graph::reversal(rows[r])];
            ok = perfect_matching(allowed);
        }
        if (ok) {
            sys.classes.push_back(vm);
            sys.class_rep.push_back(all_reps[c]);
        }
    }

    // Variables: class weights, then admissible stub counts (both edge sides
    // must survive for the pair to be realizable on a closed-up face).
    for (std::size_t c = 0; c < sys.classes.size(); ++c) {
        std::string name = "w[";
        for (int v = 0; v < pn; ++v)
            name += (v ? "," : "") + sys.solid_quotient->vertex(sys.classes[c][v]).id;
        sys.variables.push_back(name + "]");
    }
    for (int d = 0; d < x2.num_darts(); ++d) {
        if (x2.kind(d) != EdgeKind::dashed) continue;
        for (int i = 0; i < tg.num_darts(); ++i) {
            if (tg.kind(i) != EdgeKind::dashed) continue;
            if (adm[i][d] && adm[Graph::reversal(i)][Graph::reversal(d)]) {
                sys.nu_vars.emplace_back(d, i);
                sys.variables.push_back("nu[" + x2.dart_id(d) + "->" + tg.dart_id(i) +
                                        "]");
            }
        }
    }
    int nvars = sys.num_variables();

    // Marginal equations: at each (piece vertex, target vertex), the stub
    // counts form a matrix whose every row and column sums to the total class
    // weight placed there.
    for (int v = 0; v < pn; ++v) {
        for (int x = 0; x < tg.num_vertices(); ++x) {
            std::vector<int> cls;
            for (int c = 0; c < sys.num_classes(); ++c)
                if (sys.classes[c][v] == x) cls.push_back(c);
            std::vector<int> rows = dashed_darts_at(x2, v);
            std::vector<int> cols = dashed_darts_at(tg, x);
            bool any = !cls.empty();
            if (!any)
                for (int d : rows)
                    for (int i : cols)
                        if (sys.var_of_nu(d, i) >= 0) any = true;
            if (!any) continue;
            for (int d : rows) {
                std::vector<Rat> row(nvars, Rat(0));
                for (int i : cols) {
                    int k = sys.var_of_nu(d, i);
                    if (k >= 0) row[k] += 1;
                }
                for (int c : cls) row[c] -= 1;
                sys.equations.push_back(std::move(row));
            }
            for (int i : cols) {
                std::vector<Rat> row(nvars, Rat(0));
                for (int d : rows) {
                    int k = sys.var_of_nu(d, i);
                    if (k >= 0) row[k] += 1;
                }
                for (int c : cls) row[c] -= 1;
                sys.equations.push_back(std::move(row));
            }
        }
    }
    // Face equations: the two ends of a dashed edge type are counted alike.
    for (const auto& [d, i] : sys.nu_vars) {
        if (d & 1) continue;
        std::vector<Rat> row(nvars, Rat(0));
        row[sys.var_of_nu(d, i)] += 1;
        int k = sys.var_of_nu(Graph::reversal(d), Graph::reversal(i));
        row[k] -= 1;
        sys.equations.push_back(std::move(row));
    }

    for (const FaceType& f : face_types(sys))
        if (f.left.empty() || f.right.empty()) sys.degenerate = true;
    return sys;
}

bool Weights::nonzero() const {
    for (const Rat& r : omega)
        if (r != 0) return true;
    for (const auto& [k, r] : nu)
        if (r != 0) return true;
    return false;
}

bool Weights::is_integral() const {
    for (const Rat& r : omega)
        if (denominator(r) != 1) return false;
    for (const auto& [k, r] : nu)
        if (denominator(r) != 1) return false;
    return true;
}

Weights weights_from_vector(const GluingSystem& sys, const std::vector<Rat>& x) {
    if (static_cast<int>(x.size()) != sys.num_variables())
        throw std::invalid_argument("weights_from_vector: size mismatch");
    Weights w;
    w.omega.assign(x.begin(), x.begin() + sys.num_classes());
    for (std::size_t k = 0; k < sys.nu_vars.size(); ++k)
        w.nu[sys.nu_vars[k]] = x[sys.num_classes() + k];
    return w;
}

std::vector<Rat> weights_to_vector(const GluingSystem& sys, const Weights& w) {
    if (static_cast<int>(w.omega.size()) != sys.num_classes())
        throw std::invalid_argument("weights_to_vector: class count mismatch");
    std::vector<Rat> x(sys.num_variables(), Rat(0));
    for (int c = 0; c < sys.num_classes(); ++c) x[c] = w.omega[c];
    for (const auto& [key, val] : w.nu) {
        int k = sys.var_of_nu(key.first, key.second);
        if (k < 0) {
            if (val != 0)
                throw std::invalid_argument("weights_to_vector: inadmissible pair " +
                                            sys.tmpl->x2->dart_id(key.first) + "->" +
                                            sys.target->dart_id(key.second));
            continue;
        }
        x[k] = val;
    }
    return x;
}

bool check_weights(const GluingSystem& sys, const Weights& w) {
    std::vector<Rat> x;
    try {
        x = weights_to_vector(sys, w);
    } catch (const std::invalid_argument&) {
        return false;
    }
    for (const Rat& r : x)
        if (r < 0) return false;
    for (const auto& row : sys.equations) {
        Rat acc = 0;
        for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * x[k];
        if (acc != 0) return false;
    }
    return true;
}

LinearSolveResult solve_system(const GluingSystem& sys) {
    return nonneg_solve(sys.equations, sys.num_variables());
}

Weights integer_scale(const Weights& w) {
    cpp_int l = 1;
    for (const Rat& r : w.omega) l = lcm(l, denominator(r));
    for (const auto& [k, r] : w.nu) l = lcm(l, denominator(r));
    Weights out = w;
    for (Rat& r : out.omega) r *= Rat(l);
    for (auto& [k, r] : out.nu) r *= Rat(l);
    return out;
}

AssembledCover assemble_cover(const GluingSystem& sys, const Weights& w) {
    if (!w.is_integral()) throw std::invalid_argument("assemble_cover: weights not integral");
    if (!w.nonzero()) throw std::invalid_argument("assemble_cover: zero weights");
    if (!check_weights(sys, w))
        throw std::invalid_argument("assemble_cover: weights violate the system");

    const PieceTemplate& t = *sys.tmpl;
    const Graph& piece = *t.piece;
    const Graph& x2 = *t.x2;
    const Graph& tg = *sys.target;
    int pn = piece.num_vertices();
    int pe = piece.num_edges();

    AssembledCover ac;
    ac.piece_n = pn;
    for (int c = 0; c < sys.num_classes(); ++c) {
        long long count = w.omega[c].convert_to<long long>();
        for (long long j = 0; j < count; ++j) {
            ac.copy_class.push_back(c);
            ac.copy_cover.push_back(sys.class_rep[c]);
        }
    }
    ac.num_copies = static_cast<int>(ac.copy_class.size());

    auto nu_of = [&](int d, int i) -> long long {
        auto it = w.nu.find({d, i});
        return it == w.nu.end() ? 0 : it->second.convert_to<long long>();
    };

    // Stub images per copy: decompose each marginal matrix into bijections
    // (integral Birkhoff via repeated perfect matchings on the support) and
    // hand them to the copies placed there, in copy order.
    std::vector<std::vector<int>> sigma(ac.num_copies,
                                        std::vector<int>(x2.num_darts(), -1));
    for (int v = 0; v < pn; ++v) {
        for (int x = 0; x < tg.num_vertices(); ++x) {
            std::vector<int> here;
            for (int k = 0; k < ac.num_copies; ++k)
                if (sys.classes[ac.copy_class[k]][v] == x) here.push_back(k);
            if (here.empty()) continue;
            std::vector<int> rows = dashed_darts_at(x2, v);
            std::vector<int> cols = dashed_darts_at(tg, x);
            std::vector<std::vector<long long>> M(rows.size(),
                                                  std::vector<long long>(cols.size()));
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < cols.size(); ++c)
                    M[r][c] = nu_of(rows[r], cols[c]);
            long long remaining = static_cast<long long>(here.size());
            std::size_t ptr = 0;
            while (remaining > 0) {
                std::vector<std::vector<char>> allowed(
                    rows.size(), std::vector<char>(cols.size(), 0));
                for (std::size_t r = 0; r < rows.size(); ++r)
                    for (std::size_t c = 0; c < cols.size(); ++c)
                        allowed[r][c] = M[r][c] > 0;
                std::vector<int> match;
                if (!perfect_matching(allowed, &match))
                    throw std::logic_error("assemble_cover: marginal matrix failed to decompose");
                long long m = remaining;
                for (std::size_t r = 0; r < rows.size(); ++r)
                    m = std::min(m, M[r][match[r]]);
                for (std::size_t r = 0; r < rows.size(); ++r) M[r][match[r]] -= m;
                for (long long j = 0; j < m; ++j, ++ptr)
                    for (std::size_t r = 0; r < rows.size(); ++r)
                        sigma[here[ptr]][rows[r]] = cols[match[r]];
                remaining -= m;
            }
        }
    }

    // Solid part: one labelled copy of the piece per unit of weight.
    auto g = std::make_shared<Graph>();
    auto z = std::make_shared<Graph>();
    for (int k = 0; k < ac.num_copies; ++k) {
        std::string pre = "g" + std::to_string(k) + ".";
        for (const Vertex& v : piece.vertices()) g->add_vertex(pre + v.id);
        z->add_vertex("P" + std::to_string(k));
    }
    for (int k = 0; k < ac.num_copies; ++k) {
        std::string pre = "g" + std::to_string(k) + ".";
        for (const Edge& e : piece.edges())
            g->add_edge(pre + e.id, ac.vertex_of(k, e.u), ac.vertex_of(k, e.v));
    }

    // Dashed wiring: match the two stub pools of each (edge type, image) pair
    // in copy order; counts balance by the face equations.
    ac.stub_dart.assign(ac.num_copies, std::vector<int>(x2.num_darts(), -1));
    std::vector<int> dashed_image;  // per dashed yhat edge: image dart of its + side
    std::vector<int> dashed_lift;   // per dashed yhat edge: the x2 dart it lifts (+ side)
    int tcount = 0;
    for (int e = 0; e < x2.num_edges(); ++e) {
        if (x2.edge(e).kind != EdgeKind::dashed) continue;
        int d0 = 2 * e, d1 = 2 * e + 1;
        int u2 = x2.origin(d0), v2 = x2.origin(d1);
        for (int i = 0; i < tg.num_darts(); ++i) {
            if (tg.kind(i) != EdgeKind::dashed) continue;
            std::vector<int> A, B;
            for (int k = 0; k < ac.num_copies; ++k) {
                if (sigma[k][d0] == i) A.push_back(k);
                if (sigma[k][d1] == Graph::reversal(i)) B.push_back(k);
            }
            if (A.size() != B.size())
                throw std::logic_error("assemble_cover: unbalanced face pools");
            for (std::size_t a = 0; a < A.size(); ++a) {
                int ne = g->add_edge("t" + std::to_string(tcount++),
                                     ac.vertex_of(A[a], u2), ac.vertex_of(B[a], v2),
                                     EdgeKind::dashed);
                ac.stub_dart[A[a]][d0] = 2 * ne;
                ac.stub_dart[B[a]][d1] = 2 * ne + 1;
                dashed_image.push_back(i);
                dashed_lift.push_back(d0);
                z->add_edge("F" + std::to_string(static_cast<int>(dashed_image.size()) - 1),
                            A[a], B[a], EdgeKind::dashed);
            }
        }
    }
    ac.yhat = g;
    ac.z = z;

    // psi: yhat -> target; chart: yhat -> x2.
    int solid_edges = ac.num_copies * pe;
    Morphism psi, chart;
    psi.src = chart.src = ac.yhat;
    psi.dst = sys.target;
    chart.dst = t.x2;
    psi.vmap.resize(g->num_vertices());
    chart.vmap.resize(g->num_vertices());
    psi.dmap.resize(g->num_darts());
    chart.dmap.resize(g->num_darts());
    for (int k = 0; k < ac.num_copies; ++k) {
        const Morphism& p = sys.covers[ac.copy_cover[k]].f;
        for (int v = 0; v < pn; ++v) {
            psi.vmap[ac.vertex_of(k, v)] = p.vmap[v];
            chart.vmap[ac.vertex_of(k, v)] = v;
        }
        for (int e = 0; e < pe; ++e)
            for (int par = 0; par < 2; ++par) {
                int d = 2 * (k * pe + e) + par;
                psi.dmap[d] = p.dmap[2 * e + par];
                chart.dmap[d] = 2 * e + par;
            }
    }
    for (std::size_t n = 0; n < dashed_image.size(); ++n) {
        int d = 2 * (solid_edges + static_cast<int>(n));
        psi.dmap[d] = dashed_image[n];
        psi.dmap[d + 1] = Graph::reversal(dashed_image[n]);
        chart.dmap[d] = dashed_lift[n];
        chart.dmap[d + 1] = Graph::reversal(dashed_lift[n]);
    }
    ac.psi = psi;
    ac.chart = chart;
    return ac;
}

namespace {

bool star_bijective(const Morphism& f, int v) {
    std::set<int> img;
    for (int d : f.src->star(v)) img.insert(f.dmap[d]);
    if (static_cast<int>(img.size()) != f.src->degree(v)) return false;
    const std::vector<int>& target_star = f.dst->star(f.vmap[v]);
    if (img.size() != target_star.size()) return false;
    for (int d : target_star)
        if (!img.count(d)) return false;
    return true;
}

}  // namespace

IntermediateReport verify_intermediate(const AssembledCover& ac, const PieceTemplate& t,
                                       int R) {
    IntermediateReport rep;
    const Graph& piece = *t.piece;
    int pn = piece.num_vertices();
    int pe = piece.num_edges();

    // (a) psi is a covering of the target.
    std::string why;
    if (verify_covering(ac.psi, &why))
        rep.covering_ok = true;
    else
        rep.witness = "psi: " + why;

    // (b) the radius-R truncation maps onto yhat along the stub charts,
    // star-bijectively at every interior vertex.
    Truncation tr = build_truncation(t, R);
    if (ac.num_copies == 0) {
        rep.witness += " empty cover";
        return rep;
    }
    std::vector<int> m(tr.num_copies, -1);
    m[0] = 0;
    Morphism chi;
    chi.src = tr.graph;
    chi.dst = ac.yhat;
    chi.vmap.assign(tr.graph->num_vertices(), -1);
    chi.dmap.assign(tr.graph->num_darts(), -1);
    bool consistent = true;
    for (int e = 0; e < tr.graph->num_edges() && consistent; ++e) {
        if (tr.graph->edge(e).kind != EdgeKind::dashed) continue;
        for (int par = 0; par < 2 && consistent; ++par) {
            int d = 2 * e + par;
            int c0 = tr.copy_of(tr.graph->origin(d));
            int c1 = tr.copy_of(tr.graph->terminus(d));
            if (m[c0] < 0) continue;
            int delta = tr.dart_chart[d];
            int yd = ac.stub_dart[m[c0]][delta];
            if (yd < 0) {
                consistent = false;
                rep.witness += " unmatched stub " + tr.graph->dart_id(d);
                break;
            }
            int far = ac.yhat->terminus(yd) / pn;
            if (m[c1] < 0)
                m[c1] = far;
            else if (m[c1] != far) {
                consistent = false;
                rep.witness += " chart conflict at " + tr.graph->dart_id(d);
                break;
            }
            chi.dmap[d] = yd;
            chi.dmap[Graph::reversal(d)] = Graph::reversal(yd);
        }
    }
    if (consistent) {
        for (int v = 0; v < tr.graph->num_vertices(); ++v)
            chi.vmap[v] = m[tr.copy_of(v)] * pn + tr.piece_vertex(v);
        for (int d = 0; d < tr.graph->num_darts(); ++d) {
            if (tr.graph->kind(d) != EdgeKind::solid) continue;
            int k = m[tr.copy_of(tr.graph->origin(d))];
            int pd = tr.dart_chart[d];
            chi.dmap[d] = 2 * (k * pe + Graph::edge_of(pd)) + (pd & 1);
        }
        rep.truncation_ok = chi.valid(&why);
        if (!rep.truncation_ok) rep.witness += " chi: " + why;
        for (int v = 0; v < tr.graph->num_vertices() && rep.truncation_ok; ++v) {
            if (!tr.interior[v]) continue;
            ++rep.interior_checked;
            if (!star_bijective(chi, v)) {
                rep.truncation_ok = false;
                rep.witness += " chi star at " + tr.graph->vertex(v).id;
            }
        }
    }

    // (c) solid components of yhat are copies of the piece, and the chart map
    // yhat -> x2 is a covering: the finite certificate that the infinite
    // assembly covers yhat.
    Graph solid = ac.yhat->kind_subgraph(EdgeKind::solid);
    rep.solid_components_ok = solid.num_components() == ac.num_copies;
    for (int k = 0; k < ac.num_copies && rep.solid_components_ok; ++k) {
        auto comp = std::make_shared<Graph>();
        for (int v = 0; v < pn; ++v)
            comp->add_vertex(ac.yhat->vertex(ac.vertex_of(k, v)).id);
        for (int e = 0; e < pe; ++e) {
            const Edge& ed = ac.yhat->edge(k * pe + e);
            comp->add_edge(ed.id, ed.u - k * pn, ed.v - k * pn);
        }
        if (!isomorphic(comp, t.piece)) {
            rep.solid_components_ok = false;
            rep.witness += " copy " + std::to_string(k) + " not a piece";
        }
    }
    if (rep.solid_components_ok && !verify_covering(ac.chart, &why)) {
        rep.solid_components_ok = false;
        rep.witness += " chart: " + why;
    }

    // (d) z covers the one-vertex quotient with a loop per dashed edge type.
    auto q = std::make_shared<Graph>();
    q->add_vertex("o");
    std::vector<int> loop_of(t.x2->num_edges(), -1);
    for (int e = 0; e < t.x2->num_edges(); ++e)
        if (t.x2->edge(e).kind == EdgeKind::dashed)
            loop_of[e] = q->add_edge(t.x2->edge(e).id, 0, 0, EdgeKind::dashed);
    Morphism zq;
    zq.src = ac.z;
    zq.dst = q;
    zq.vmap.assign(ac.z->num_vertices(), 0);
    zq.dmap.resize(ac.z->num_darts());
    int solid_edges = ac.num_copies * pe;
    for (int n = 0; n < ac.z->num_edges(); ++n) {
        int delta = ac.chart.dmap[2 * (solid_edges + n)];
        zq.dmap[2 * n] = 2 * loop_of[Graph::edge_of(delta)] + (delta & 1);
        zq.dmap[2 * n + 1] = Graph::reversal(zq.dmap[2 * n]);
    }
    if (verify_covering(zq, &why))
        rep.z_covers_quotient = true;
    else
        rep.witness += " z: " + why;
    return rep;
}

Weights weights_from_cover(const AssembledCover& ac, const GluingSystem& sys) {
    Weights w;
    w.omega.assign(sys.num_classes(), Rat(0));
    for (int c : ac.copy_class) w.omega[c] += 1;
    const Graph& x2 = *sys.tmpl->x2;
    for (int k = 0; k < ac.num_copies; ++k)
        for (int d = 0; d < x2.num_darts(); ++d)
            if (ac.stub_dart[k][d] >= 0)
                w.nu[{d, ac.psi.dmap[ac.stub_dart[k][d]]}] += 1;
    return w;
}

Weights weights_from_cover(const CoveringMap& q, const GluingSystem& sys) {
    if (sys.which_target != 2)
        throw std::invalid_argument("weights_from_cover: needs a target-2 system");
    const Graph& W = *q.f.src;
    int pn = sys.tmpl->piece->num_vertices();
    std::vector<int> id_vmap(pn);
    std::iota(id_vmap.begin(), id_vmap.end(), 0);
    int id_class = -1;
    for (int c = 0; c < sys.num_classes(); ++c)
        if (sys.classes[c] == id_vmap) id_class = c;
    if (id_class < 0)
        throw std::invalid_argument("weights_from_cover: identity class not accepted");

    Graph solid = W.kind_subgraph(EdgeKind::solid);
    std::vector<int> comp = solid.component_ids();
    int ncomp = solid.num_components();
    std::vector<std::set<int>> images(ncomp);
    std::vector<int> size(ncomp, 0);
    for (int v = 0; v < W.num_vertices(); ++v) {
        ++size[comp[v]];
        images[comp[v]].insert(q.f.vmap[v]);
    }
    Weights w;
    w.omega.assign(sys.num_classes(), Rat(0));
    for (int c = 0; c < ncomp; ++c) {
        if (size[c] != pn || static_cast<int>(images[c].size()) != pn)
            throw std::invalid_argument("weights_from_cover: untypeable component");
        w.omega[id_class] += 1;
    }
    for (int d = 0; d < W.num_darts(); ++d)
        if (W.kind(d) == EdgeKind::dashed) w.nu[{q.f.dmap[d], q.f.dmap[d]}] += 1;
    return w;
}

std::string gluing_system_json(const GluingSystem& sys) {
    nlohmann::ordered_json j;
    j["target"] = sys.which_target == 1 ? "x1" : "x2";
    j["stabilization_radius"] = sys.stabilization_radius;
    j["degenerate"] = sys.degenerate;
    j["pieces"] = nlohmann::ordered_json::array();
    for (int c = 0; c < sys.num_classes(); ++c) {
        nlohmann::ordered_json jp;
        jp["id"] = "P" + std::to_string(c);
        jp["type"] = "piece";
        std::string phi;
        for (std::size_t v = 0; v < sys.classes[c].size(); ++v)
            phi += (v ? "," : "") + sys.solid_quotient->vertex(sys.classes[c][v]).id;
        jp["phi"] = phi;
        j["pieces"].push_back(jp);
    }
    j["faces"] = nlohmann::ordered_json::array();
    for (const FaceType& f : face_types(sys)) {
        nlohmann::ordered_json jf;
        jf["id"] = "F" + sys.tmpl->x2->edge(f.x2_edge).id + ":" +
                   sys.target->dart_id(f.image_dart);
        auto names = [](const std::vector<int>& cs) {
            std::vector<std::string> out;
            for (int c : cs) out.push_back("P" + std::to_string(c));
            return out;
        };
        jf["left"] = names(f.left);
        jf["right"] = names(f.right);
        j["faces"].push_back(jf);
    }
    return j.dump(2);
}

std::string weights_json(const GluingSystem& sys, const Weights& w) {
    nlohmann::ordered_json j;
    j["omega"] = nlohmann::ordered_json::object();
    for (int c = 0; c < sys.num_classes(); ++c)
        j["omega"]["P" + std::to_string(c)] = rat_to_string(w.omega[c]);
    j["nu"] = nlohmann::ordered_json::object();
    for (const auto& [key, val] : w.nu)
        j["nu"][sys.tmpl->x2->dart_id(key.first) + "->" + sys.target->dart_id(key.second)] =
            rat_to_string(val);
    return j.dump(2);
}

}  // namespace covlab
