// Silting/tilting machinery: minimal approximations, irreducible mutation,
// the folded composites, braid-word mutation, two-term enumeration and
// End-algebra invariants.
#pragma once

#include "preproj/chainmap.hpp"

namespace preproj {

/// A basic silting-like object tracked as an ordered list of indecomposable
/// complex summands; position r corresponds to the r-th vertex slot.
template <class K>
struct SiltNode {
    std::vector<RightCplx<K>> summands;
};

template <class K>
struct MutationContext {
    const Algebra<K>* A;
    const RightCat<K>* cat;
    NakayamaPerm iota;
    std::vector<int> folded;

    MutationContext(const Algebra<K>& alg, const RightCat<K>& c)
        : A(&alg), cat(&c), iota(nakayama_perm(alg.graph)), folded(folded_vertices(alg.graph)) {}
    int position_of(int vertex) const { return A->vertex_index(vertex); }
};

template <class K>
SiltNode<K> silt_start(const MutationContext<K>& ctx) {
    SiltNode<K> node;
    for (int v : ctx.A->graph.vertices) {
        RightCplx<K> P;
        P.cat = ctx.cat;
        P.lo = 0;
        P.terms = {{{v, 0}}};
        P.init_diff();
        node.summands.push_back(std::move(P));
    }
    return node;
}

template <class K>
RightCplx<K> node_sum(const SiltNode<K>& node) {
    RightCplx<K> P = node.summands[0];
    for (size_t r = 1; r < node.summands.size(); ++r) P = direct_sum(P, node.summands[r]);
    return P;
}

/// Class of a complex in the split Grothendieck group of projectives.
template <class K>
std::vector<long long> g_vector(const RightCplx<K>& P) {
    const Algebra<K>& A = P.cat->algebra();
    std::vector<long long> g(A.num_vertices(), 0);
    for (int d = P.lo; d <= P.hi(); ++d)
        for (auto& s : P.term(d)) g[A.vertex_index(s.lab)] += (d % 2 == 0) ? 1 : -1;
    return g;
}

template <class K>
std::vector<std::vector<long long>> g_matrix(const SiltNode<K>& node) {
    std::vector<std::vector<long long>> m;
    for (auto& s : node.summands) m.push_back(g_vector(s));
    return m;
}

/// Canonical dedup key: the sorted multiset of summand classes.
template <class K>
std::vector<std::vector<long long>> g_key(const SiltNode<K>& node) {
    auto m = g_matrix(node);
    std::sort(m.begin(), m.end());
    return m;
}

inline long long int_det(std::vector<std::vector<long long>> m) {
    // fraction-free Bareiss
    int n = int(m.size());
    long long prev = 1;
    long long sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { swap = i; break; }
            if (swap < 0) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Minimal left add(M)-approximation data of the summand at position r.
template <class K>
struct Approximation {
    RightCplx<K> target;                 // M' = (+) M_t^{c_t}
    ChainMapped<K, RightCat<K>> map;     // f : X -> M'
    std::vector<int> mult;               // c_t per position (0 at r)
};

namespace detail {

/// rad End classes of an indecomposable complex, as chain maps.
template <class K>
std::vector<ChainMapped<K, RightCat<K>>> rad_end_maps(const RightCplx<K>& M) {
    HomClasses<K, RightCat<K>> E = hom_classes(M, M);
    // identity class
    ChainMapped<K, RightCat<K>> id = identity_map(M);
    Vec<K> idcls = E.class_of(id);
    // build End as FinAlgebra on class coordinates
    FinAlgebra<K> alg;
    alg.dim = E.dim();
    alg.one = idcls;
    const RightCat<K>& cat = *M.cat;
    alg.mul = [&E, &cat](const Vec<K>& x, const Vec<K>& y) {
        return E.class_of(compose_maps(cat, E.materialize_class(x), E.materialize_class(y)));
    };
    Mat<K> rad = alg.radical_basis();
    std::vector<ChainMapped<K, RightCat<K>>> out;
    for (int c = 0; c < rad.cols(); ++c) out.push_back(E.materialize_class(rad.col(c)));
    return out;
}

}  // namespace detail

/// Minimal left add(M)-approximation of X = summands[r] by the complement.
template <class K>
Approximation<K> minimal_left_approximation(const MutationContext<K>& ctx,
                                            const SiltNode<K>& node, int r) {
    const RightCat<K>& cat = *ctx.cat;
    int n = int(node.summands.size());
    const RightCplx<K>& X = node.summands[r];

    // hom classes X -> M_t and the radical span
    std::vector<HomClasses<K, RightCat<K>>> homXM(n);
    for (int t = 0; t < n; ++t)
        if (t != r) homXM[t] = hom_classes(X, node.summands[t]);

    Approximation<K> out;
    out.mult.assign(n, 0);
    std::vector<std::vector<ChainMapped<K, RightCat<K>>>> chosen(n);

    for (int t = 0; t < n; ++t) {
        if (t == r || homXM[t].dim() == 0) continue;
        RowSpace<K> radspan(homXM[t].dim());
        for (int s = 0; s < n; ++s) {
            if (s == r) continue;
            // maps X -> M_s composed with rad(M_s, M_t)
            std::vector<ChainMapped<K, RightCat<K>>> second;
            if (s == t) {
                second = detail::rad_end_maps(node.summands[t]);
            } else {
                HomClasses<K, RightCat<K>> H = hom_classes(node.summands[s], node.summands[t]);
                for (int i = 0; i < H.dim(); ++i) {
                    Vec<K> cls = Vec<K>::Zero(H.dim());
                    cls(i) = K(1);
                    second.push_back(H.materialize_class(cls));
                }
            }
            if (second.empty()) continue;
            HomClasses<K, RightCat<K>>& HX = homXM[s == t ? t : s];
            for (int i = 0; i < HX.dim(); ++i) {
                Vec<K> cls = Vec<K>::Zero(HX.dim());
                cls(i) = K(1);
                ChainMapped<K, RightCat<K>> g = HX.materialize_class(cls);
                for (auto& h : second) radspan.add(homXM[t].class_of(compose_maps(cat, h, g)));
            }
        }
        // division algebra degree of End(M_t)
        HomClasses<K, RightCat<K>> Et = hom_classes(node.summands[t], node.summands[t]);
        int dt = Et.dim() - int(detail::rad_end_maps(node.summands[t]).size());
        int top = homXM[t].dim() - radspan.rank();
        if (top == 0) continue;
        if (top % dt != 0) throw std::logic_error("approximation: multiplicity not divisible");
        out.mult[t] = top / dt;
        // choose class representatives spanning Hom/rad
        RowSpace<K> span = radspan;
        for (int i = 0; i < homXM[t].dim() && int(chosen[t].size()) < out.mult[t]; ++i) {
            Vec<K> cls = Vec<K>::Zero(homXM[t].dim());
            cls(i) = K(1);
            if (span.add(cls)) chosen[t].push_back(homXM[t].materialize_class(cls));
        }
        if (int(chosen[t].size()) != out.mult[t])
            throw std::logic_error("approximation: representative selection failed");
    }

    // assemble M' and f
    bool started = false;
    std::vector<std::pair<int, int>> copies;  // (position, copy index)
    for (int t = 0; t < n; ++t)
        for (int c = 0; c < out.mult[t]; ++c) copies.push_back({t, c});
    if (copies.empty()) {
        // zero target: empty complex
        out.target.cat = &cat;
        out.target.lo = 0;
        out.target.terms = {};
        out.target.init_diff();
        return out;
    }
    for (auto& [t, c] : copies) {
        if (!started) {
            out.target = node.summands[t];
            started = true;
        } else {
            out.target = direct_sum(out.target, node.summands[t]);
        }
    }
    // chain map components into the right copy offsets
    for (int d = X.lo; d <= X.hi(); ++d) {
        if (!out.target.has_degree(d)) continue;
        EMat<K> m(int(out.target.term(d).size()), int(X.term(d).size()));
        int off = 0;
        for (auto& [t, c] : copies) {
            const RightCplx<K>& Mt = node.summands[t];
            auto it = chosen[t][c].comp.find(d);
            if (it != chosen[t][c].comp.end() && Mt.has_degree(d)) {
                for (int rr = 0; rr < it->second.rows; ++rr)
                    for (int cc = 0; cc < it->second.cols; ++cc)
                        m.at(off + rr, cc) = it->second.at(rr, cc);
            }
            off += int(Mt.term(d).size());
        }
        out.map.comp.emplace(d, std::move(m));
    }

    // assertion: f is a left add(M)-approximation
    for (int t = 0; t < n; ++t) {
        if (t == r || homXM[t].dim() == 0) continue;
        RowSpace<K> reached(homXM[t].dim());
        HomClasses<K, RightCat<K>> HMt = hom_classes(out.target, node.summands[t]);
        for (int i = 0; i < HMt.dim(); ++i) {
            Vec<K> cls = Vec<K>::Zero(HMt.dim());
            cls(i) = K(1);
            ChainMapped<K, RightCat<K>> h = HMt.materialize_class(cls);
            reached.add(homXM[t].class_of(compose_maps(cat, h, out.map)));
        }
        if (reached.rank() != homXM[t].dim())
            throw std::logic_error("approximation property violated at position " +
                                   std::to_string(t));
    }
    return out;
}

/// Irreducible left mutation at position r: replace X by cone(X -> M').
template <class K>
SiltNode<K> left_mutation(const MutationContext<K>& ctx, const SiltNode<K>& node, int r) {
    Approximation<K> ap = minimal_left_approximation(ctx, node, r);
    RightCplx<K> Y = cone(node.summands[r], ap.target, ap.map);
    minimize_complex(Y);
    SiltNode<K> out = node;
    out.summands[r] = std::move(Y);
    return out;
}

/// Minimal right add(M)-approximation of X = summands[r] (for μ^-).
template <class K>
SiltNode<K> right_mutation(const MutationContext<K>& ctx, const SiltNode<K>& node, int r) {
    const RightCat<K>& cat = *ctx.cat;
    int n = int(node.summands.size());
    const RightCplx<K>& X = node.summands[r];

    std::vector<HomClasses<K, RightCat<K>>> homMX(n);
    for (int t = 0; t < n; ++t)
        if (t != r) homMX[t] = hom_classes(node.summands[t], X);

    std::vector<int> mult(n, 0);
    std::vector<std::vector<ChainMapped<K, RightCat<K>>>> chosen(n);
    for (int t = 0; t < n; ++t) {
        if (t == r || homMX[t].dim() == 0) continue;
        RowSpace<K> radspan(homMX[t].dim());
        for (int s = 0; s < n; ++s) {
            if (s == r) continue;
            // rad(M_t, M_s) then M_s -> X
            std::vector<ChainMapped<K, RightCat<K>>> first;
            if (s == t) {
                first = detail::rad_end_maps(node.summands[t]);
            } else {
                HomClasses<K, RightCat<K>> H = hom_classes(node.summands[t], node.summands[s]);
                for (int i = 0; i < H.dim(); ++i) {
                    Vec<K> cls = Vec<K>::Zero(H.dim());
                    cls(i) = K(1);
                    first.push_back(H.materialize_class(cls));
                }
            }
            if (first.empty()) continue;
            HomClasses<K, RightCat<K>>& HX = homMX[s == t ? t : s];
            for (int i = 0; i < HX.dim(); ++i) {
                Vec<K> cls = Vec<K>::Zero(HX.dim());
                cls(i) = K(1);
                ChainMapped<K, RightCat<K>> h = HX.materialize_class(cls);
                for (auto& g : first) radspan.add(homMX[t].class_of(compose_maps(cat, h, g)));
            }
        }
        HomClasses<K, RightCat<K>> Et = hom_classes(node.summands[t], node.summands[t]);
        int dt = Et.dim() - int(detail::rad_end_maps(node.summands[t]).size());
        int top = homMX[t].dim() - radspan.rank();
        if (top == 0) continue;
        if (top % dt != 0) throw std::logic_error("right approximation: bad multiplicity");
        mult[t] = top / dt;
        RowSpace<K> span = radspan;
        for (int i = 0; i < homMX[t].dim() && int(chosen[t].size()) < mult[t]; ++i) {
            Vec<K> cls = Vec<K>::Zero(homMX[t].dim());
            cls(i) = K(1);
            if (span.add(cls)) chosen[t].push_back(homMX[t].materialize_class(cls));
        }
    }

    std::vector<std::pair<int, int>> copies;
    for (int t = 0; t < n; ++t)
        for (int c = 0; c < mult[t]; ++c) copies.push_back({t, c});
    RightCplx<K> source;
    source.cat = &cat;
    source.lo = 0;
    source.terms = {};
    source.init_diff();
    bool started = false;
    for (auto& [t, c] : copies) {
        if (!started) {
            source = node.summands[t];
            started = true;
        } else {
            source = direct_sum(source, node.summands[t]);
        }
    }
    // g : M'' -> X assembled from the chosen rows
    ChainMapped<K, RightCat<K>> g;
    for (int d = source.lo; d <= source.hi(); ++d) {
        if (!X.has_degree(d) && !source.has_degree(d)) continue;
        EMat<K> m(int(X.term(d).size()), int(source.term(d).size()));
        int off = 0;
        for (auto& [t, c] : copies) {
            const RightCplx<K>& Mt = node.summands[t];
            auto it = chosen[t][c].comp.find(d);
            if (it != chosen[t][c].comp.end()) {
                for (int rr = 0; rr < it->second.rows; ++rr)
                    for (int cc = 0; cc < it->second.cols; ++cc)
                        m.at(rr, off + cc) = it->second.at(rr, cc);
            }
            off += int(Mt.term(d).size());
        }
        g.comp.emplace(d, std::move(m));
    }
    // assert right approximation: Hom(M_t, M'') -> Hom(M_t, X) surjective
    for (int t = 0; t < n; ++t) {
        if (t == r || homMX[t].dim() == 0) continue;
        RowSpace<K> reached(homMX[t].dim());
        HomClasses<K, RightCat<K>> HMt = hom_classes(node.summands[t], source);
        for (int i = 0; i < HMt.dim(); ++i) {
            Vec<K> cls = Vec<K>::Zero(HMt.dim());
            cls(i) = K(1);
            ChainMapped<K, RightCat<K>> h = HMt.materialize_class(cls);
            reached.add(homMX[t].class_of(compose_maps(cat, g, h)));
        }
        if (reached.rank() != homMX[t].dim())
            throw std::logic_error("right approximation property violated");
    }
    RightCplx<K> Y = cone(source, X, g);
    Y = shift_complex(Y, -1);
    minimize_complex(Y);
    SiltNode<K> out = node;
    out.summands[r] = std::move(Y);
    return out;
}

/// The ι-orbit composite mutation of §2.4.
template <class K>
SiltNode<K> composite_mutation(const MutationContext<K>& ctx, const SiltNode<K>& node, int i,
                               int sign) {
    if (std::find(ctx.folded.begin(), ctx.folded.end(), i) == ctx.folded.end())
        throw std::invalid_argument("composite_mutation: " + std::to_string(i) +
                                    " is not a folded vertex");
    int j = ctx.iota(i);
    std::vector<int> word;
    if (j == i)
        word = {i};
    else if (ctx.A->graph.adjacent(i, j))
        word = {i, j, i};
    else
        word = {i, j};
    SiltNode<K> cur = node;
    // composition applies right-to-left
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        int pos = ctx.position_of(*it);
        cur = sign > 0 ? left_mutation(ctx, cur, pos) : right_mutation(ctx, cur, pos);
    }
    return cur;
}

/// 𝝁_a(Λ) for a braid word.
template <class K>
SiltNode<K> mutate_word(const MutationContext<K>& ctx, const BraidWord& a) {
    SiltNode<K> cur = silt_start(ctx);
    for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
        cur = composite_mutation(ctx, cur, it->gen, it->exp);
    return cur;
}

template <class K>
bool is_silting(const SiltNode<K>& node) {
    RightCplx<K> P = node_sum(node);
    int span = P.hi() - P.lo;
    for (int i = 1; i <= span; ++i)
        if (homotopy_hom(P, P, i).dim != 0) return false;
    long long det = int_det(g_matrix(node));
    return det == 1 || det == -1;
}

template <class K>
bool is_tilting(const SiltNode<K>& node) {
    if (!is_silting(node)) return false;
    RightCplx<K> P = node_sum(node);
    int span = P.hi() - P.lo;
    for (int i = 1; i <= span; ++i)
        if (homotopy_hom(P, P, -i).dim != 0) return false;
    return true;
}

template <class K>
bool is_two_term(const SiltNode<K>& node) {
    for (auto& s : node.summands)
        if (s.lo < -1 || s.hi() > 0) return false;
    return true;
}

/// BFS over two-term silting complexes by irreducible left mutation,
/// deduplicated by g-matrices. Edges of the exchange graph come along.
template <class K>
struct TwoTermEnumeration {
    std::vector<SiltNode<K>> nodes;
    std::vector<std::pair<int, int>> edges;  // mutation edges (unordered pairs)
};

template <class K>
TwoTermEnumeration<K> enumerate_two_silt(const MutationContext<K>& ctx, long long guard = 1000000) {
    WeylGroup W(ctx.A->graph);
    if (W.group_order() > guard)
        throw std::runtime_error("enumerate_two_silt: |W| exceeds the guard");
    TwoTermEnumeration<K> out;
    std::map<std::vector<std::vector<long long>>, int> seen;
    SiltNode<K> start = silt_start(ctx);
    out.nodes.push_back(start);
    seen[g_key(start)] = 0;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int id : frontier) {
            for (size_t r = 0; r < out.nodes[id].summands.size(); ++r) {
                SiltNode<K> cand = left_mutation(ctx, out.nodes[id], int(r));
                if (!is_two_term(cand)) continue;
                auto key = g_key(cand);
                auto it = seen.find(key);
                int cid;
                if (it == seen.end()) {
                    cid = int(out.nodes.size());
                    seen[key] = cid;
                    out.nodes.push_back(cand);
                    next.push_back(cid);
                } else {
                    cid = it->second;
                }
                if (id < cid) out.edges.push_back({id, cid});
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

/// BFS over two-term tilting complexes by the folded composites.
template <class K>
TwoTermEnumeration<K> enumerate_two_tilt(const MutationContext<K>& ctx, long long guard = 1000000) {
    WeylGroup W(ctx.A->graph);
    if (W.group_order() > guard)
        throw std::runtime_error("enumerate_two_tilt: |W| exceeds the guard");
    TwoTermEnumeration<K> out;
    std::map<std::vector<std::vector<long long>>, int> seen;
    SiltNode<K> start = silt_start(ctx);
    out.nodes.push_back(start);
    seen[g_key(start)] = 0;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int id : frontier) {
            for (int i : ctx.folded) {
                SiltNode<K> cand = composite_mutation(ctx, out.nodes[id], i, +1);
                if (!is_two_term(cand)) continue;
                auto key = g_key(cand);
                auto it = seen.find(key);
                int cid;
                if (it == seen.end()) {
                    cid = int(out.nodes.size());
                    seen[key] = cid;
                    out.nodes.push_back(cand);
                    next.push_back(cid);
                } else {
                    cid = it->second;
                }
                if (id < cid) out.edges.push_back({id, cid});
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

/// End invariants of a (tilting) complex via its homotopy endomorphism
/// algebra; compared against the algebra's own invariants.
inline AlgebraInvariants end_invariants(const SiltNode<Fp>& node, uint64_t seed = 11) {
    RightCplx<Fp> P = node_sum(node);
    minimize_complex(P);
    detail::ComplexEnd<Fp, RightCat<Fp>> E = detail::complex_end(P);
    return algebra_invariants(E.alg, seed);
}

inline AlgebraInvariants lambda_invariants(const Algebra<Fp>& A, uint64_t seed = 11) {
    FinAlgebra<Fp> F;
    F.dim = A.dim();
    F.one = A.one();
    F.mul = [&A](const Vec<Fp>& x, const Vec<Fp>& y) { return A.mul(x, y); };
    return algebra_invariants(F, seed);
}

/// Complex serialization: terms as vertex lists per degree, differential as
/// sparse entries with algebra-element coefficient vectors.
template <class K>
nlohmann::json complex_to_json(const RightCplx<K>& P) {
    nlohmann::json terms = nlohmann::json::object();
    for (int d = P.lo; d <= P.hi(); ++d) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto& s : P.term(d)) arr.push_back(s.lab);
        terms[std::to_string(d)] = arr;
    }
    nlohmann::json diff = nlohmann::json::object();
    for (int d = P.lo; d < P.hi(); ++d) {
        nlohmann::json entries = nlohmann::json::array();
        int k = P.index_of(d);
        for (size_t s = 0; s < P.terms[k].size(); ++s)
            for (auto& [t, e] : P.diff[k][s]) {
                nlohmann::json coef = nlohmann::json::array();
                for (auto& [key, c] : e.t) {
                    std::ostringstream os;
                    os << c;
                    coef.push_back({{"basis", key}, {"c", os.str()}});
                }
                entries.push_back({{"r", int(s)}, {"c", t}, {"coef", coef}});
            }
        diff[std::to_string(d)] = entries;
    }
    return {{"terms", terms}, {"diff", diff}};
}

/// DOT export of an exchange graph, nodes labeled by g-matrices.
template <class K>
std::string exchange_graph_dot(const TwoTermEnumeration<K>& e) {
    std::ostringstream os;
    os << "graph exchange {\n  node [shape=box,fontsize=9];\n";
    for (size_t i = 0; i < e.nodes.size(); ++i) {
        os << "  n" << i << " [label=\"";
        auto m = g_matrix(e.nodes[i]);
        for (size_t r = 0; r < m.size(); ++r) {
            for (size_t c = 0; c < m[r].size(); ++c) os << m[r][c] << (c + 1 < m[r].size() ? " " : "");
            if (r + 1 < m.size()) os << "\\n";
        }
        os << "\"];\n";
    }
    for (auto& [a, b] : e.edges) os << "  n" << a << " -- n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace preproj
