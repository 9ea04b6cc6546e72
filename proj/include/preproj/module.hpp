// Right modules and bimodules presented by generator action matrices,
// intertwiner spaces, isomorphism testing with a Krull-Schmidt fallback,
// the ideals I_i / I_w and automorphism twists.
#pragma once

#include <vector>

#include "preproj/algebra.hpp"
#include "preproj/finalg.hpp"
#include "preproj/weyl.hpp"

namespace preproj {

/// A module is a dimension plus an aligned list of generator action
/// matrices. Two modules are comparable when their op lists follow the same
/// generator enumeration (same algebra, same sides).
template <class K>
struct ModuleK {
    int dim = 0;
    std::vector<Mat<K>> ops;
};

// ---- right modules over Algebra<K>: ops = [e_v per vertex | arrows] ----

template <class K>
ModuleK<K> right_regular(const Algebra<K>& A) {
    ModuleK<K> m;
    m.dim = A.dim();
    for (int v : A.graph.vertices) {
        Mat<K> e = Mat<K>::Zero(m.dim, m.dim);
        for (int k = 0; k < m.dim; ++k)
            if (A.basis[k].tgt == v) e(k, k) = K(1);
        m.ops.push_back(e);
    }
    for (const Arrow& a : A.arrows) {
        Mat<K> r = Mat<K>::Zero(m.dim, m.dim);
        for (int k = 0; k < m.dim; ++k) r.col(k) = A.rmul_arrow(A.unit_basis(k), a.id);
        m.ops.push_back(r);
    }
    return m;
}

/// e_v Λ as a right module.
template <class K>
ModuleK<K> right_projective(const Algebra<K>& A, int v) {
    std::vector<int> cols;
    for (int k = 0; k < A.dim(); ++k)
        if (A.basis[k].src == v) cols.push_back(k);
    Mat<K> B = Mat<K>::Zero(A.dim(), int(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) B(cols[i], int(i)) = K(1);
    return submodule(right_regular(A), B);
}

template <class K>
ModuleK<K> right_simple(const Algebra<K>& A, int v) {
    ModuleK<K> m;
    m.dim = 1;
    for (int w : A.graph.vertices)
        m.ops.push_back(Mat<K>::Constant(1, 1, w == v ? K(1) : K(0)));
    for (size_t a = 0; a < A.arrows.size(); ++a) m.ops.push_back(Mat<K>::Zero(1, 1));
    return m;
}

/// Right action matrix of an algebra element on a right module.
template <class K>
Mat<K> right_act_elem(const Algebra<K>& A, const ModuleK<K>& M, const Vec<K>& x) {
    int nv = A.num_vertices();
    Mat<K> out = Mat<K>::Zero(M.dim, M.dim);
    for (int k = 0; k < A.dim(); ++k) {
        if (x(k).is_zero()) continue;
        Mat<K> m = M.ops[A.vertex_index(A.basis[k].src)];
        for (int a : A.path_of(k)) m = M.ops[nv + a] * m;
        out += x(k) * m;
    }
    return out;
}

// ---- bimodules over (L, R): ops = [L idems | L arrows | R idems | R arrows] ----

template <class K>
ModuleK<K> bimodule_regular(const Algebra<K>& A) {
    ModuleK<K> m;
    m.dim = A.dim();
    for (int v : A.graph.vertices) {
        Mat<K> e = Mat<K>::Zero(m.dim, m.dim);
        for (int k = 0; k < m.dim; ++k)
            if (A.basis[k].src == v) e(k, k) = K(1);
        m.ops.push_back(e);
    }
    for (const Arrow& a : A.arrows) {
        Mat<K> l = Mat<K>::Zero(m.dim, m.dim);
        for (int k = 0; k < m.dim; ++k) l.col(k) = A.lmul_arrow(a.id, A.unit_basis(k));
        m.ops.push_back(l);
    }
    ModuleK<K> right = right_regular(A);
    for (auto& op : right.ops) m.ops.push_back(op);
    return m;
}

/// Layout helpers for a bimodule over (L, R).
struct BimodLayout {
    int nvL, naL, nvR, naR;
    int lidem(int i) const { return i; }
    int larr(int a) const { return nvL + a; }
    int ridem(int i) const { return nvL + naL + i; }
    int rarr(int a) const { return nvL + naL + nvR + a; }
};
template <class K>
BimodLayout bimod_layout(const Algebra<K>& L, const Algebra<K>& R) {
    return {L.num_vertices(), int(L.arrows.size()), R.num_vertices(), int(R.arrows.size())};
}

template <class K>
Mat<K> left_act_elem(const Algebra<K>& L, const BimodLayout& lay, const ModuleK<K>& M,
                     const Vec<K>& x) {
    Mat<K> out = Mat<K>::Zero(M.dim, M.dim);
    for (int k = 0; k < L.dim(); ++k) {
        if (x(k).is_zero()) continue;
        Mat<K> m = Mat<K>::Identity(M.dim, M.dim);
        for (int a : L.path_of(k)) m = m * M.ops[lay.larr(a)];
        m = M.ops[lay.lidem(L.vertex_index(L.basis[k].src))] * m;
        out += x(k) * m;
    }
    return out;
}

template <class K>
Mat<K> right_act_elem_bimod(const Algebra<K>& R, const BimodLayout& lay, const ModuleK<K>& M,
                            const Vec<K>& x) {
    Mat<K> out = Mat<K>::Zero(M.dim, M.dim);
    for (int k = 0; k < R.dim(); ++k) {
        if (x(k).is_zero()) continue;
        Mat<K> m = M.ops[lay.ridem(R.vertex_index(R.basis[k].src))];
        for (int a : R.path_of(k)) m = M.ops[lay.rarr(a)] * m;
        out += x(k) * m;
    }
    return out;
}

/// D(M): linear dual with the two actions transposed and swapped.
template <class K>
ModuleK<K> bimodule_dual(const ModuleK<K>& M, const BimodLayout& lay) {
    ModuleK<K> d;
    d.dim = M.dim;
    d.ops.resize(M.ops.size());
    for (int i = 0; i < lay.nvL; ++i) d.ops[lay.lidem(i)] = M.ops[lay.ridem(i)].transpose();
    for (int a = 0; a < lay.naL; ++a) d.ops[lay.larr(a)] = M.ops[lay.rarr(a)].transpose();
    for (int i = 0; i < lay.nvR; ++i) d.ops[lay.ridem(i)] = M.ops[lay.lidem(i)].transpose();
    for (int a = 0; a < lay.naR; ++a) d.ops[lay.rarr(a)] = M.ops[lay.larr(a)].transpose();
    return d;
}

/// Twisted bimodule {}_psi M {}_phi: left action through psi, right through
/// phi; the underlying space is unchanged.
template <class K>
ModuleK<K> twist_bimodule(const Algebra<K>& L, const Algebra<K>& R, const ModuleK<K>& M,
                          const AutMap<K>& psi, const AutMap<K>& phi) {
    BimodLayout lay = bimod_layout(L, R);
    ModuleK<K> t = M;
    for (int i = 0; i < lay.nvL; ++i)
        t.ops[lay.lidem(i)] =
            left_act_elem(L, lay, M, psi.idem_images[i]);
    for (int a = 0; a < lay.naL; ++a)
        t.ops[lay.larr(a)] = left_act_elem(L, lay, M, psi.arrow_images[a]);
    for (int i = 0; i < lay.nvR; ++i)
        t.ops[lay.ridem(i)] = right_act_elem_bimod(R, lay, M, phi.idem_images[i]);
    for (int a = 0; a < lay.naR; ++a)
        t.ops[lay.rarr(a)] = right_act_elem_bimod(R, lay, M, phi.arrow_images[a]);
    return t;
}

/// {}_1(M)_nu for the regular-side convention used throughout.
template <class K>
ModuleK<K> nu_twist(const Algebra<K>& A, const ModuleK<K>& M, const AutMap<K>& nu) {
    return twist_bimodule(A, A, M, AutMap<K>::identity(A), nu);
}

// ---- submodules and quotients ----

/// Induced module on an invariant subspace; B columns span the subspace.
template <class K>
ModuleK<K> submodule(const ModuleK<K>& M, const Mat<K>& B) {
    ModuleK<K> s;
    s.dim = int(B.cols());
    for (const Mat<K>& op : M.ops) {
        Mat<K> img = op * B;
        Mat<K> X(s.dim, s.dim);
        for (int c = 0; c < s.dim; ++c) {
            auto sol = solve<K>(B, Vec<K>(img.col(c)));
            if (!sol) throw std::logic_error("submodule: subspace not invariant");
            X.col(c) = *sol;
        }
        s.ops.push_back(X);
    }
    return s;
}

/// Quotient module M / span(rows of rs).
template <class K>
ModuleK<K> quotient_module(const ModuleK<K>& M, const RowSpace<K>& rs) {
    std::vector<int> free;
    {
        std::vector<bool> pivot(M.dim, false);
        for (int p : rs.pivots()) pivot[p] = true;
        for (int i = 0; i < M.dim; ++i)
            if (!pivot[i]) free.push_back(i);
    }
    auto project = [&](const Vec<K>& v) {
        Vec<K> r = rs.reduce(v);
        Vec<K> out(int(free.size()));
        for (size_t i = 0; i < free.size(); ++i) out(int(i)) = r(free[i]);
        return out;
    };
    ModuleK<K> q;
    q.dim = int(free.size());
    for (const Mat<K>& op : M.ops) {
        Mat<K> X(q.dim, q.dim);
        for (size_t j = 0; j < free.size(); ++j) {
            Vec<K> lift = Vec<K>::Zero(M.dim);
            lift(free[j]) = K(1);
            X.col(int(j)) = project(op * lift);
        }
        q.ops.push_back(X);
    }
    return q;
}

// ---- hom spaces and isomorphism ----

/// Basis of intertwiners f: M -> N (f . op_M = op_N . f for every op).
template <class K>
std::vector<Mat<K>> hom_space(const ModuleK<K>& M, const ModuleK<K>& N) {
    if (M.ops.size() != N.ops.size())
        throw std::invalid_argument("hom_space: incomparable modules");
    int rows = 0;
    int unknowns = M.dim * N.dim;
    if (unknowns == 0) return {};
    Mat<K> sys(int(M.ops.size()) * unknowns, unknowns);
    sys.setZero();
    for (size_t g = 0; g < M.ops.size(); ++g) {
        // vec(f T) - vec(S f) = (T^t (x) I - I (x) S) vec(f)
        const Mat<K>& T = M.ops[g];
        const Mat<K>& S = N.ops[g];
        for (int cm = 0; cm < M.dim; ++cm)
            for (int rn = 0; rn < N.dim; ++rn) {
                int row = rows + cm * N.dim + rn;
                for (int k = 0; k < M.dim; ++k) sys(row, k * N.dim + rn) += T(k, cm);
                for (int k = 0; k < N.dim; ++k) sys(row, cm * N.dim + k) -= S(rn, k);
            }
        rows += unknowns;
    }
    Mat<K> ker = nullspace<K>(sys);
    std::vector<Mat<K>> out;
    for (int c = 0; c < ker.cols(); ++c) out.push_back(mat_of<K>(ker.col(c), N.dim, M.dim));
    return out;
}

template <class K>
int hom_dim(const ModuleK<K>& M, const ModuleK<K>& N) {
    return int(hom_space(M, N).size());
}

/// End(M) as an abstract algebra (basis of intertwiners, composition).
template <class K>
FinAlgebra<K> end_algebra_of_module(const ModuleK<K>& M, std::vector<Mat<K>>* basis_out = nullptr) {
    std::vector<Mat<K>> basis = hom_space(M, M);
    int d = int(basis.size());
    Mat<K> coords(M.dim * M.dim, d);
    for (int i = 0; i < d; ++i) coords.col(i) = vec_of(basis[i]);
    FinAlgebra<K> E;
    E.dim = d;
    auto to_coords = [coords](const Mat<K>& f) {
        auto sol = solve<K>(coords, vec_of(f));
        if (!sol) throw std::logic_error("End coordinates failed");
        return *sol;
    };
    E.mul = [basis, to_coords](const Vec<K>& x, const Vec<K>& y) {
        int n = basis.empty() ? 0 : int(basis[0].rows());
        Mat<K> fx = Mat<K>::Zero(n, n), fy = Mat<K>::Zero(n, n);
        for (size_t i = 0; i < basis.size(); ++i) {
            fx += x(int(i)) * basis[i];
            fy += y(int(i)) * basis[i];
        }
        return to_coords(fx * fy);
    };
    Mat<K> id = Mat<K>::Identity(M.dim, M.dim);
    E.one = to_coords(id);
    if (basis_out) *basis_out = basis;
    return E;
}

/// Indecomposable direct summands (Fp scalars; Krull-Schmidt).
inline std::vector<ModuleK<Fp>> decompose_module(const ModuleK<Fp>& M, uint64_t seed = 17) {
    if (M.dim == 0) return {};
    std::vector<Mat<Fp>> basis;
    FinAlgebra<Fp> E = end_algebra_of_module(M, &basis);
    auto e = nontrivial_idempotent(E, seed);
    if (!e) return {M};
    Mat<Fp> f = Mat<Fp>::Zero(M.dim, M.dim);
    for (int i = 0; i < E.dim; ++i) f += (*e)(i)*basis[i];
    // M = im f  (+)  im (1-f)
    auto span_cols = [&](const Mat<Fp>& g) {
        RowSpace<Fp> rs(M.dim);
        std::vector<int> keep;
        for (int c = 0; c < g.cols(); ++c)
            if (rs.add(g.col(c))) keep.push_back(c);
        Mat<Fp> B(M.dim, int(keep.size()));
        for (size_t i = 0; i < keep.size(); ++i) B.col(int(i)) = g.col(keep[i]);
        return B;
    };
    Mat<Fp> B1 = span_cols(f);
    Mat<Fp> B2 = span_cols(Mat<Fp>(Mat<Fp>::Identity(M.dim, M.dim) - f));
    auto left = decompose_module(submodule(M, B1), seed + 1);
    auto right = decompose_module(submodule(M, B2), seed + 2);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

/// Isomorphism test for indecomposables: some composition g f must fall
/// outside rad End(M).
inline bool indec_iso(const ModuleK<Fp>& M, const ModuleK<Fp>& N) {
    if (M.dim != N.dim) return false;
    auto F = hom_space(M, N);
    auto G = hom_space(N, M);
    if (F.empty() || G.empty()) return M.dim == 0;
    std::vector<Mat<Fp>> ebasis;
    FinAlgebra<Fp> E = end_algebra_of_module(M, &ebasis);
    Mat<Fp> rad = E.radical_basis();
    RowSpace<Fp> radspace(E.dim);
    for (int c = 0; c < rad.cols(); ++c) radspace.add(rad.col(c));
    Mat<Fp> coords(M.dim * M.dim, E.dim);
    for (int i = 0; i < E.dim; ++i) coords.col(i) = vec_of(ebasis[i]);
    for (const auto& f : F)
        for (const auto& g : G) {
            auto c = solve<Fp>(coords, vec_of(Mat<Fp>(g * f)));
            if (c && !radspace.contains(*c)) return true;
        }
    return false;
}

/// Randomized isomorphism search with a Krull-Schmidt fallback (Fp).
inline bool module_iso(const ModuleK<Fp>& M, const ModuleK<Fp>& N, uint64_t seed = 23,
                       int trials = 20) {
    if (M.dim != N.dim) return false;
    if (M.dim == 0) return true;
    auto F = hom_space(M, N);
    if (F.empty()) return false;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Mat<Fp> f = Mat<Fp>::Zero(M.dim, M.dim);
        for (const auto& b : F) f += rng.scalar<Fp>() * b;
        if (is_invertible(f)) return true;
    }
    // deterministic fallback: Krull-Schmidt factor matching
    auto dm = decompose_module(M, seed * 2 + 1);
    auto dn = decompose_module(N, seed * 2 + 2);
    if (dm.size() != dn.size()) return false;
    std::vector<bool> used(dn.size(), false);
    for (const auto& m : dm) {
        bool matched = false;
        for (size_t j = 0; j < dn.size(); ++j) {
            if (used[j]) continue;
            if (indec_iso(m, dn[j])) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

// ---- ideals ----

template <class K>
struct Ideal {
    const Algebra<K>* A = nullptr;
    RowSpace<K> space{0};

    int dim() const { return space.rank(); }
    friend bool operator==(const Ideal& x, const Ideal& y) { return x.space == y.space; }
    friend bool operator!=(const Ideal& x, const Ideal& y) { return !(x == y); }
};

/// Close a set of vectors to a two-sided ideal.
template <class K>
Ideal<K> ideal_closure(const Algebra<K>& A, std::vector<Vec<K>> gens) {
    Ideal<K> I;
    I.A = &A;
    I.space = RowSpace<K>(A.dim());
    std::vector<Vec<K>> queue;
    for (auto& g : gens)
        if (I.space.add(g)) queue.push_back(I.space.rows().back());
    while (!queue.empty()) {
        Vec<K> v = queue.back();
        queue.pop_back();
        for (size_t a = 0; a < A.arrows.size(); ++a) {
            Vec<K> l = A.lmul_arrow(int(a), v);
            if (I.space.add(l)) queue.push_back(I.space.rows().back());
            Vec<K> r = A.rmul_arrow(v, int(a));
            if (I.space.add(r)) queue.push_back(I.space.rows().back());
        }
        for (int w : A.graph.vertices) {
            Vec<K> l = A.lmul_idem(w, v);
            if (I.space.add(l)) queue.push_back(I.space.rows().back());
            Vec<K> r = A.rmul_idem(v, w);
            if (I.space.add(r)) queue.push_back(I.space.rows().back());
        }
    }
    return I;
}

/// I_i = Λ(1 - e_i)Λ.
template <class K>
Ideal<K> idempotent_ideal(const Algebra<K>& A, int vertex) {
    Vec<K> gen = A.one() - A.idempotent(vertex);  // throws on unknown vertex
    return ideal_closure(A, {gen});
}

/// Span of pairwise products of two ideals (already two-sided).
template <class K>
Ideal<K> ideal_product(const Ideal<K>& I, const Ideal<K>& J) {
    if (I.A != J.A) throw std::invalid_argument("ideal_product: ambient algebras differ");
    const Algebra<K>& A = *I.A;
    Ideal<K> P;
    P.A = I.A;
    P.space = RowSpace<K>(A.dim());
    for (const auto& x : I.space.rows())
        for (const auto& y : J.space.rows()) P.space.add(A.mul(x, y));
    return P;
}

template <class K>
Ideal<K> unit_ideal(const Algebra<K>& A) {
    Ideal<K> I;
    I.A = &A;
    I.space = RowSpace<K>(A.dim());
    for (int k = 0; k < A.dim(); ++k) I.space.add(A.unit_basis(k));
    return I;
}

/// I_w for a reduced word; rejects non-reduced words.
template <class K>
Ideal<K> ideal_of_weyl(const Algebra<K>& A, const WeylGroup& W, const std::vector<int>& word) {
    if (!W.is_reduced(word))
        throw std::invalid_argument("ideal_of_weyl: word is not reduced");
    Ideal<K> I = unit_ideal(A);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        // Λ(1-e_i) I, closed on the left
        const Algebra<K>& alg = A;
        Vec<K> proj = alg.one() - alg.idempotent(*it);
        Ideal<K> next;
        next.A = &A;
        next.space = RowSpace<K>(A.dim());
        std::vector<Vec<K>> queue;
        for (const auto& row : I.space.rows()) {
            Vec<K> v = alg.mul(proj, row);
            if (next.space.add(v)) queue.push_back(next.space.rows().back());
        }
        while (!queue.empty()) {
            Vec<K> v = queue.back();
            queue.pop_back();
            for (size_t a = 0; a < alg.arrows.size(); ++a) {
                Vec<K> l = alg.lmul_arrow(int(a), v);
                if (next.space.add(l)) queue.push_back(next.space.rows().back());
            }
        }
        I = std::move(next);
    }
    return I;
}

/// The ideal as a bimodule (restriction of the regular actions).
template <class K>
ModuleK<K> ideal_as_bimodule(const Ideal<K>& I) {
    const Algebra<K>& A = *I.A;
    Mat<K> B(A.dim(), I.dim());
    for (int i = 0; i < I.dim(); ++i) B.col(i) = I.space.rows()[i];
    return submodule(bimodule_regular(A), B);
}

template <class K>
ModuleK<K> ideal_as_right_module(const Ideal<K>& I) {
    const Algebra<K>& A = *I.A;
    Mat<K> B(A.dim(), I.dim());
    for (int i = 0; i < I.dim(); ++i) B.col(i) = I.space.rows()[i];
    return submodule(right_regular(A), B);
}

/// Λ/I as a bimodule.
template <class K>
ModuleK<K> quotient_bimodule(const Ideal<K>& I) {
    return quotient_module(bimodule_regular(*I.A), I.space);
}

template <class K>
ModuleK<K> quotient_right_module(const Ideal<K>& I) {
    return quotient_module(right_regular(*I.A), I.space);
}

}  // namespace preproj
