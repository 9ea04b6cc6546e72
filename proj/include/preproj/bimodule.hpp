// The §3 pipeline: B_w = Λ (x)^L Ĩ_w (x)^L Λ built from the standard
// three-term bimodule resolution of the (truncated) affine preprojective
// algebra, realized as strict complexes of projective Λ-bimodules; smart
// truncation σ^{≥-1} via hyper-resolutions over Λ^e within trust windows.
#pragma once

#include "preproj/chainmap.hpp"
#include "preproj/mutation.hpp"

namespace preproj {

inline int coxeter_number_of(const DynkinGraph& g) {
    switch (g.kind) {
        case Kind::A: return g.rank + 1;
        case Kind::D: return 2 * g.rank - 2;
        case Kind::E: return g.rank == 6 ? 12 : (g.rank == 7 ? 18 : 30);
        default: throw std::invalid_argument("coxeter number: Dynkin only");
    }
}

/// Everything the §3 checks need for one graph at one truncation level.
template <class K>
struct DerivedContext {
    DynkinGraph g;
    int N;
    Algebra<K> lambda;
    Algebra<K> affine;
    WeylGroup W;
    NakayamaPerm iota;
    AutMap<K> nu;
    AutMap<K> nu_inv;
    EnvCat<K> env;
    RightCat<K> rcat;
    MutationContext<K> mut;

    DerivedContext(const DynkinGraph& graph, int truncation)
        : g(graph),
          N(truncation),
          lambda(preprojective<K>(graph)),
          affine(truncated_affine<K>(graph, truncation)),
          W(graph),
          iota(nakayama_perm(graph)),
          nu(nakayama_automorphism(lambda)),
          nu_inv(aut_inverse(nu)),
          env(lambda),
          rcat(lambda),
          mut(lambda, rcat) {}

    std::vector<int> t_word(int folded_vertex) const {
        return WeylGroup(g).t_generator(folded_vertex).second;
    }
};

/// Default truncation: 2(h-1) + 3 max_i l(t_i), per the design decision.
inline int default_truncation(const DynkinGraph& g) {
    int h = coxeter_number_of(g);
    WeylGroup W(g);
    int maxlen = 1;
    for (int i : folded_vertices(g)) maxlen = std::max(maxlen, int(W.t_generator(i).second.size()));
    return 2 * (h - 1) + 3 * maxlen;
}

namespace detail {

/// Graded bases of the pieces e_M Ĩ_w e_M' of an ideal in the affine algebra,
/// with coordinates and one-arrow multiplications expanded on the basis.
template <class K>
struct MiddleData {
    const Algebra<K>* aff;
    // per (M, M'): basis vectors (columns) and their grades
    std::map<std::pair<int, int>, Mat<K>> basis;
    std::map<std::pair<int, int>, std::vector<int>> grades;

    int dim(int m, int mp) const {
        auto it = basis.find({m, mp});
        return it == basis.end() ? 0 : int(it->second.cols());
    }
    Vec<K> coords(int m, int mp, const Vec<K>& v) const {
        auto it = basis.find({m, mp});
        if (it == basis.end()) {
            if (!v.isZero(0)) throw std::logic_error("MiddleData: vector outside piece");
            return Vec<K>(0);
        }
        auto sol = solve<K>(it->second, v);
        if (!sol) throw std::logic_error("MiddleData: coordinates failed");
        return *sol;
    }
};

template <class K>
MiddleData<K> middle_data(const Algebra<K>& aff, const Ideal<K>& I) {
    MiddleData<K> D;
    D.aff = &aff;
    std::map<std::pair<int, int>, std::vector<Vec<K>>> cols;
    std::map<std::pair<int, int>, std::vector<int>> grades;
    std::map<std::pair<int, int>, RowSpace<K>> spaces;
    int maxlen = aff.max_len();
    for (const auto& row : I.space.rows()) {
        for (int m : aff.graph.vertices)
            for (int mp : aff.graph.vertices) {
                Vec<K> piece = aff.rmul_idem(aff.lmul_idem(m, row), mp);
                if (piece.isZero(0)) continue;
                for (int len = 0; len <= maxlen; ++len) {
                    Vec<K> slice = aff.zero();
                    bool nonzero = false;
                    for (int k = 0; k < aff.dim(); ++k)
                        if (!piece(k).is_zero() && aff.basis[k].len == len) {
                            slice(k) = piece(k);
                            nonzero = true;
                        }
                    if (!nonzero) continue;
                    auto key = std::make_pair(m, mp);
                    auto [it, fresh] = spaces.try_emplace(key, aff.dim());
                    if (it->second.add(slice)) {
                        cols[key].push_back(it->second.rows().back());
                        grades[key].push_back(len);
                    }
                }
            }
    }
    for (auto& [key, vecs] : cols) {
        Mat<K> B(aff.dim(), int(vecs.size()));
        for (size_t c = 0; c < vecs.size(); ++c) B.col(int(c)) = vecs[c];
        D.basis[key] = B;
        D.grades[key] = grades[key];
    }
    return D;
}

}  // namespace detail

/// B_w as a strict complex of projective Λ-bimodules, from the three-term
/// affine bimodule resolution tensored on both sides. Degrees -4..0.
template <class K>
EnvCplx<K> build_B_raw(const DerivedContext<K>& ctx, const std::vector<int>& word) {
    const Algebra<K>& aff = ctx.affine;
    const Algebra<K>& lam = ctx.lambda;
    if (!ctx.W.is_reduced(word))
        throw std::invalid_argument("build_B: word is not reduced");
    Ideal<K> I = ideal_of_weyl(aff, ctx.W, word);
    detail::MiddleData<K> mid = detail::middle_data(aff, I);

    // resolution slot descriptors: j = 0,1,2; u indexes vertices or arrows
    struct Slot {
        int j;
        int u;       // vertex (as value) for j = 0,2; arrow id for j = 1
        int L, M;    // outer Λ-label and middle contact vertex
    };
    auto slots_of = [&](int j) {
        std::vector<Slot> out;
        if (j == 0 || j == 2) {
            for (int v : aff.graph.vertices) out.push_back({j, v, v, v});
        } else {
            for (const Arrow& a : aff.arrows) out.push_back({1, a.id, a.src, a.tgt});
        }
        return out;
    };
    // mirrored for the right-hand resolution: M' and R
    auto rslots_of = [&](int k) {
        std::vector<Slot> out;
        if (k == 0 || k == 2) {
            for (int v : aff.graph.vertices) out.push_back({k, v, v, v});
        } else {
            for (const Arrow& b : aff.arrows) out.push_back({1, b.id, b.tgt, b.src});
            // here L holds R(v)=t(b) and M holds M'(v)=s(b)
        }
        return out;
    };

    EnvCplx<K> B;
    B.cat = &ctx.env;
    B.lo = -4;
    B.terms.assign(5, {});
    // summand bookkeeping: (j, uidx, k, vidx, middle index) -> position
    std::map<std::tuple<int, int, int, int, int>, int> where;
    std::vector<std::vector<Slot>> ls{slots_of(0), slots_of(1), slots_of(2)};
    std::vector<std::vector<Slot>> rs{rslots_of(0), rslots_of(1), rslots_of(2)};
    for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k) {
            int deg = -(j + k);
            for (size_t ui = 0; ui < ls[j].size(); ++ui)
                for (size_t vi = 0; vi < rs[k].size(); ++vi) {
                    const Slot& u = ls[j][ui];
                    const Slot& v = rs[k][vi];
                    if (u.L == 0 || v.L == 0) continue;  // Λe_0 = 0
                    int nm = mid.dim(u.M, v.M);
                    for (int m = 0; m < nm; ++m) {
                        where[{j, int(ui), k, int(vi), m}] = int(B.terms[B.index_of(deg)].size());
                        B.terms[B.index_of(deg)].push_back(
                            {{u.L, v.L}, mid.grades.at({u.M, v.M})[m] + j + k});
                    }
                }
        }
    B.init_diff();

    auto lam_arrow_entry_key = [&](const Arrow& aff_arrow) -> std::optional<int> {
        // image of the affine arrow in Λ as a basis index
        if (aff_arrow.src == 0 || aff_arrow.tgt == 0) return std::nullopt;
        int id = lam.arrow_by_name(aff_arrow.name).id;
        int k = lam.arrow_basis_.at(id);
        if (k < 0) return std::nullopt;
        return k;
    };
    auto lam_idem_key = [&](int v) { return lam.idempotent_index(v); };

    // left-resolution differentials (move j -> j-1), sign +1
    for (int j = 1; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k)
            for (size_t ui = 0; ui < ls[j].size(); ++ui)
                for (size_t vi = 0; vi < rs[k].size(); ++vi) {
                    const Slot& u = ls[j][ui];
                    const Slot& v = rs[k][vi];
                    if (u.L == 0 || v.L == 0) continue;
                    int nm = mid.dim(u.M, v.M);
                    if (nm == 0) continue;
                    int deg = -(j + k);
                    auto emit = [&](int m, int uj2, int ui2, int m2, K coeff,
                                    std::optional<int> lamkey) {
                        // entry from (j,ui,k,vi,m) to (j-1,ui2,k,vi,m2)
                        auto itS = where.find({j, int(ui), k, int(vi), m});
                        auto itT = where.find({uj2, ui2, k, int(vi), m2});
                        if (itS == where.end() || itT == where.end()) return;
                        uint64_t lk = lamkey ? uint64_t(*lamkey)
                                             : uint64_t(lam_idem_key(ls[j - 1][ui2].L));
                        uint64_t rk = uint64_t(lam_idem_key(v.L));
                        B.dadd(deg, itS->second, itT->second,
                               Entry<K>{{{pack2(uint32_t(lk), uint32_t(rk)), coeff}}});
                    };
                    if (j == 1) {
                        const Arrow& a = aff.arrows[u.u];
                        // x (x) a m (x) ...  into vertex summand s(a)
                        int srcIdx = -1, tgtIdx = -1;
                        for (size_t w2 = 0; w2 < ls[0].size(); ++w2) {
                            if (ls[0][w2].u == a.src) srcIdx = int(w2);
                            if (ls[0][w2].u == a.tgt) tgtIdx = int(w2);
                        }
                        for (int m = 0; m < nm; ++m) {
                            // first part: middle left-multiplied by a
                            Vec<K> mv = mid.basis.at({u.M, v.M}).col(m);
                            Vec<K> am = aff.lmul_arrow(a.id, mv);
                            if (ls[0][srcIdx].L != 0 && !am.isZero(0)) {
                                Vec<K> coords = mid.coords(a.src, v.M, am);
                                for (int m2 = 0; m2 < coords.size(); ++m2)
                                    if (!coords(m2).is_zero())
                                        emit(m, 0, srcIdx, m2, coords(m2), std::nullopt);
                            }
                            // second part: -(x a) (x) m
                            auto lk = lam_arrow_entry_key(a);
                            if (lk && ls[0][tgtIdx].L != 0)
                                emit(m, 0, tgtIdx, m, K(-1), lk);
                        }
                    } else {  // j == 2: the mesh map
                        int i = u.u;
                        for (const Arrow& a : aff.arrows) {
                            if (a.src != i) continue;
                            K eps = a.star ? K(-1) : K(1);
                            if (aff.signs == RelationSigns::Flipped) eps = -eps;
                            int aIdx = -1, aStarIdx = -1;
                            for (size_t w2 = 0; w2 < ls[1].size(); ++w2) {
                                if (ls[1][w2].u == a.id) aIdx = int(w2);
                                if (ls[1][w2].u == a.pair) aStarIdx = int(w2);
                            }
                            for (int m = 0; m < nm; ++m) {
                                // (x (x) a* m) into arrow summand a
                                Vec<K> mv = mid.basis.at({u.M, v.M}).col(m);
                                Vec<K> am = aff.lmul_arrow(a.pair, mv);
                                if (ls[1][aIdx].L != 0 && !am.isZero(0)) {
                                    Vec<K> coords = mid.coords(a.tgt, v.M, am);
                                    for (int m2 = 0; m2 < coords.size(); ++m2)
                                        if (!coords(m2).is_zero()) {
                                            auto itS = where.find({2, int(ui), k, int(vi), m});
                                            auto itT =
                                                where.find({1, aIdx, k, int(vi), m2});
                                            if (itS != where.end() && itT != where.end())
                                                B.dadd(-(2 + k) , itS->second, itT->second,
                                                       Entry<K>{{{pack2(
                                                                      uint32_t(lam_idem_key(
                                                                          ls[1][aIdx].L)),
                                                                      uint32_t(lam_idem_key(v.L))),
                                                                  eps * coords(m2)}}});
                                        }
                                }
                                // (x a (x) m) into arrow summand a*
                                auto lk = lam_arrow_entry_key(a);
                                if (lk && ls[1][aStarIdx].L != 0) {
                                    auto itS = where.find({2, int(ui), k, int(vi), m});
                                    auto itT = where.find({1, aStarIdx, k, int(vi), m});
                                    if (itS != where.end() && itT != where.end())
                                        B.dadd(-(2 + k), itS->second, itT->second,
                                               Entry<K>{{{pack2(uint32_t(*lk),
                                                                uint32_t(lam_idem_key(v.L))),
                                                          eps}}});
                                }
                            }
                        }
                    }
                }

    // right-resolution differentials (move k -> k-1), Koszul sign (-1)^j
    for (int j = 0; j <= 2; ++j)
        for (int k = 1; k <= 2; ++k)
            for (size_t ui = 0; ui < ls[j].size(); ++ui)
                for (size_t vi = 0; vi < rs[k].size(); ++vi) {
                    const Slot& u = ls[j][ui];
                    const Slot& v = rs[k][vi];
                    if (u.L == 0 || v.L == 0) continue;
                    int nm = mid.dim(u.M, v.M);
                    if (nm == 0) continue;
                    int deg = -(j + k);
                    K koszul = (j % 2 == 0) ? K(1) : K(-1);
                    auto emit_scalar = [&](int m, int vi2, int m2, K coeff) {
                        auto itS = where.find({j, int(ui), k, int(vi), m});
                        auto itT = where.find({j, int(ui), k - 1, vi2, m2});
                        if (itS == where.end() || itT == where.end()) return;
                        B.dadd(deg, itS->second, itT->second,
                               Entry<K>{{{pack2(uint32_t(lam_idem_key(u.L)),
                                                uint32_t(lam_idem_key(rs[k - 1][vi2].L))),
                                          koszul * coeff}}});
                    };
                    auto emit_arrow = [&](int m, int vi2, int lamkey, K coeff) {
                        auto itS = where.find({j, int(ui), k, int(vi), m});
                        auto itT = where.find({j, int(ui), k - 1, vi2, m});
                        if (itS == where.end() || itT == where.end()) return;
                        B.dadd(deg, itS->second, itT->second,
                               Entry<K>{{{pack2(uint32_t(lam_idem_key(u.L)), uint32_t(lamkey)),
                                          koszul * coeff}}});
                    };
                    if (k == 1) {
                        const Arrow& b = aff.arrows[v.u];
                        int srcIdx = -1, tgtIdx = -1;
                        for (size_t w2 = 0; w2 < rs[0].size(); ++w2) {
                            if (rs[0][w2].u == b.src) srcIdx = int(w2);
                            if (rs[0][w2].u == b.tgt) tgtIdx = int(w2);
                        }
                        for (int m = 0; m < nm; ++m) {
                            // m (x) b y : right factor left-multiplied by b
                            auto lk = lam_arrow_entry_key(b);
                            if (lk && rs[0][srcIdx].L != 0) emit_arrow(m, srcIdx, *lk, K(1));
                            // -(m b) (x) y
                            Vec<K> mv = mid.basis.at({u.M, v.M}).col(m);
                            Vec<K> mb = aff.rmul_arrow(mv, b.id);
                            if (rs[0][tgtIdx].L != 0 && !mb.isZero(0)) {
                                Vec<K> coords = mid.coords(u.M, b.tgt, mb);
                                for (int m2 = 0; m2 < coords.size(); ++m2)
                                    if (!coords(m2).is_zero())
                                        emit_scalar(m, tgtIdx, m2, -coords(m2));
                            }
                        }
                    } else {  // k == 2
                        int i = v.u;
                        for (const Arrow& b : aff.arrows) {
                            if (b.src != i) continue;
                            K eps = b.star ? K(-1) : K(1);
                            if (aff.signs == RelationSigns::Flipped) eps = -eps;
                            int bIdx = -1, bStarIdx = -1;
                            for (size_t w2 = 0; w2 < rs[1].size(); ++w2) {
                                if (rs[1][w2].u == b.id) bIdx = int(w2);
                                if (rs[1][w2].u == b.pair) bStarIdx = int(w2);
                            }
                            for (int m = 0; m < nm; ++m) {
                                // m (x) b* y into arrow summand b
                                const Arrow& bstar = aff.arrows[b.pair];
                                auto lk = lam_arrow_entry_key(bstar);
                                if (lk && rs[1][bIdx].L != 0) {
                                    auto itS = where.find({j, int(ui), 2, int(vi), m});
                                    auto itT = where.find({j, int(ui), 1, bIdx, m});
                                    if (itS != where.end() && itT != where.end())
                                        B.dadd(deg, itS->second, itT->second,
                                               Entry<K>{{{pack2(uint32_t(lam_idem_key(u.L)),
                                                                uint32_t(*lk)),
                                                          koszul * eps}}});
                                }
                                // (m b) (x) y into arrow summand b*
                                Vec<K> mv = mid.basis.at({u.M, v.M}).col(m);
                                Vec<K> mb = aff.rmul_arrow(mv, b.id);
                                if (rs[1][bStarIdx].L != 0 && !mb.isZero(0)) {
                                    Vec<K> coords = mid.coords(u.M, b.tgt, mb);
                                    for (int m2 = 0; m2 < coords.size(); ++m2)
                                        if (!coords(m2).is_zero()) {
                                            auto itS = where.find({j, int(ui), 2, int(vi), m});
                                            auto itT = where.find({j, int(ui), 1, bStarIdx, m2});
                                            if (itS != where.end() && itT != where.end())
                                                B.dadd(deg, itS->second, itT->second,
                                                       Entry<K>{{{pack2(uint32_t(lam_idem_key(
                                                                            u.L)),
                                                                        uint32_t(lam_idem_key(
                                                                            rs[1][bStarIdx].L))),
                                                                  koszul * eps * coords(m2)}}});
                                        }
                                }
                            }
                        }
                    }
                }

    return B;
}

/// Minimized B_w.
template <class K>
EnvCplx<K> build_B(const DerivedContext<K>& ctx, const std::vector<int>& word) {
    EnvCplx<K> B = build_B_raw(ctx, word);
    if (!B.d_squared_zero()) throw std::logic_error("build_B: d^2 != 0");
    minimize_complex(B);
    return B;
}

}  // namespace preproj
