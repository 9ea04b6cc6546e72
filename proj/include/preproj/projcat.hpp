// Complexes over additive categories of projectives, in two flavors:
// one-sided (summands e_vΛ, entries in e_wΛe_v) and enveloping (summands
// Λe_i (x) e_jΛ, entries in e_iΛe_k (x) e_lΛe_j). Complexes carry a
// path-length grade per summand; differentials are grade-homogeneous.
#pragma once

#include <map>
#include <set>

#include "preproj/module.hpp"

namespace preproj {

/// Sparse element of a hom space; term keys pack one or two basis indices.
template <class K>
struct Entry {
    std::vector<std::pair<uint64_t, K>> t;

    bool empty() const { return t.empty(); }
    void normalize() {
        std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::vector<std::pair<uint64_t, K>> out;
        for (auto& [k, c] : t) {
            if (!out.empty() && out.back().first == k)
                out.back().second += c;
            else
                out.push_back({k, c});
        }
        std::erase_if(out, [](auto& p) { return p.second.is_zero(); });
        t = std::move(out);
    }
    Entry& operator+=(const Entry& o) {
        t.insert(t.end(), o.t.begin(), o.t.end());
        normalize();
        return *this;
    }
    Entry operator*(K c) const {
        Entry r = *this;
        for (auto& [k, v] : r.t) v *= c;
        r.normalize();
        return r;
    }
    friend bool operator==(const Entry& a, const Entry& b) { return a.t == b.t; }
};

inline uint64_t pack2(uint32_t a, uint32_t b) { return (uint64_t(a) << 32) | b; }
inline std::pair<uint32_t, uint32_t> unpack2(uint64_t k) {
    return {uint32_t(k >> 32), uint32_t(k & 0xffffffffu)};
}

/// One-sided category: objects e_vΛ labeled by vertex, Hom(e_vΛ, e_wΛ) =
/// e_wΛe_v acting by left multiplication. Term key = algebra basis index.
template <class K>
class RightCat {
  public:
    using Label = int;  // vertex

    explicit RightCat(const Algebra<K>& A) : A_(&A) {}
    const Algebra<K>& algebra() const { return *A_; }

    Entry<K> identity(Label v) const {
        return {{{uint64_t(A_->idempotent_index(v)), K(1)}}};
    }
    /// Hom basis keys for maps e_vΛ -> e_wΛ.
    std::vector<uint64_t> hom_basis(Label v, Label w) const {
        std::vector<uint64_t> keys;
        for (int k : A_->component(w, v)) keys.push_back(uint64_t(k));
        return keys;
    }
    int term_grade(uint64_t key) const { return A_->basis[int(key)].len; }
    K scalar_part(Label v, const Entry<K>& e) const {
        uint64_t id = uint64_t(A_->idempotent_index(v));
        for (auto& [k, c] : e.t)
            if (k == id) return c;
        return K(0);
    }
    /// compose(later, first) = later ∘ first.
    Entry<K> compose(const Entry<K>& later, const Entry<K>& first) const {
        Entry<K> out;
        for (auto& [kg, cg] : later.t)
            for (auto& [kf, cf] : first.t) {
                const auto& prod = stc(int(kg), int(kf));
                for (auto& [k, c] : prod) out.t.push_back({uint64_t(k), cg * cf * c});
            }
        out.normalize();
        return out;
    }

    int label_dim(Label v) const {
        int d = 0;
        for (int k = 0; k < A_->dim(); ++k)
            if (A_->basis[k].src == v) ++d;
        return d;
    }
    /// Realized basis of e_vΛ: algebra basis indices with src = v.
    std::vector<int> realize_basis(Label v) const {
        std::vector<int> out;
        for (int k = 0; k < A_->dim(); ++k)
            if (A_->basis[k].src == v) out.push_back(k);
        return out;
    }
    int realized_grade(Label, int local_index, const std::vector<int>& basis_idx) const {
        return A_->basis[basis_idx[local_index]].len;
    }
    /// Number of generator ops of a realized module (right structure).
    int num_ops() const { return A_->num_vertices() + int(A_->arrows.size()); }

  private:
    const Algebra<K>* A_;
    mutable std::map<std::pair<int, int>, std::vector<std::pair<int, K>>> stc_;
    const std::vector<std::pair<int, K>>& stc(int i, int j) const {
        auto it = stc_.find({i, j});
        if (it != stc_.end()) return it->second;
        Vec<K> prod = A_->mul(A_->unit_basis(i), A_->unit_basis(j));
        std::vector<std::pair<int, K>> sp;
        for (int k = 0; k < A_->dim(); ++k)
            if (!prod(k).is_zero()) sp.push_back({k, prod(k)});
        return stc_.emplace(std::make_pair(i, j), std::move(sp)).first->second;
    }
};

/// Enveloping category: objects Λe_i (x) e_jΛ labeled by vertex pairs,
/// Hom((i,j),(k,l)) = e_iΛe_k (x) e_lΛe_j, acting by x(x)y -> xu (x) vy.
/// Term key packs the two algebra basis indices (u, v).
template <class K>
class EnvCat {
  public:
    struct Label {
        int i, j;
        friend bool operator==(const Label&, const Label&) = default;
        friend auto operator<=>(const Label&, const Label&) = default;
    };

    explicit EnvCat(const Algebra<K>& A) : A_(&A) {}
    const Algebra<K>& algebra() const { return *A_; }

    Entry<K> identity(Label l) const {
        return {{{pack2(uint32_t(A_->idempotent_index(l.i)), uint32_t(A_->idempotent_index(l.j))),
                  K(1)}}};
    }
    std::vector<uint64_t> hom_basis(Label a, Label b) const {
        std::vector<uint64_t> keys;
        for (int u : A_->component(a.i, b.i))
            for (int v : A_->component(b.j, a.j)) keys.push_back(pack2(uint32_t(u), uint32_t(v)));
        return keys;
    }
    int term_grade(uint64_t key) const {
        auto [u, v] = unpack2(key);
        return A_->basis[int(u)].len + A_->basis[int(v)].len;
    }
    K scalar_part(Label l, const Entry<K>& e) const {
        uint64_t id = pack2(uint32_t(A_->idempotent_index(l.i)), uint32_t(A_->idempotent_index(l.j)));
        for (auto& [k, c] : e.t)
            if (k == id) return c;
        return K(0);
    }
    Entry<K> compose(const Entry<K>& later, const Entry<K>& first) const {
        // (u2,v2) ∘ (u1,v1) : x(x)y -> x u1 u2 (x) v2 v1 y
        Entry<K> out;
        for (auto& [k2, c2] : later.t)
            for (auto& [k1, c1] : first.t) {
                auto [u2, v2] = unpack2(k2);
                auto [u1, v1] = unpack2(k1);
                const auto& pu = stc(int(u1), int(u2));
                const auto& pv = stc(int(v2), int(v1));
                for (auto& [ku, cu] : pu)
                    for (auto& [kv, cv] : pv)
                        out.t.push_back({pack2(uint32_t(ku), uint32_t(kv)), c1 * c2 * cu * cv});
            }
        out.normalize();
        return out;
    }

    int label_dim(Label l) const {
        int a = 0, b = 0;
        for (int k = 0; k < A_->dim(); ++k) {
            if (A_->basis[k].tgt == l.i) ++a;
            if (A_->basis[k].src == l.j) ++b;
        }
        return a * b;
    }
    int num_ops() const { return 2 * (A_->num_vertices() + int(A_->arrows.size())); }

  private:
    const Algebra<K>* A_;
    mutable std::map<std::pair<int, int>, std::vector<std::pair<int, K>>> stc_;
    const std::vector<std::pair<int, K>>& stc(int i, int j) const {
        auto it = stc_.find({i, j});
        if (it != stc_.end()) return it->second;
        Vec<K> prod = A_->mul(A_->unit_basis(i), A_->unit_basis(j));
        std::vector<std::pair<int, K>> sp;
        for (int k = 0; k < A_->dim(); ++k)
            if (!prod(k).is_zero()) sp.push_back({k, prod(k)});
        return stc_.emplace(std::make_pair(i, j), std::move(sp)).first->second;
    }
};

/// A complex of projectives over Cat. terms[k] lives in cohomological degree
/// lo + k; diff[k] maps degree lo+k -> lo+k+1, stored row-sparse
/// (diff[k][src] = {tgt -> entry}).
template <class K, class Cat>
struct Cplx {
    struct Summand {
        typename Cat::Label lab;
        int grade = 0;
    };
    const Cat* cat = nullptr;
    int lo = 0;
    std::vector<std::vector<Summand>> terms;
    std::vector<std::vector<std::map<int, Entry<K>>>> diff;  // [k][src][tgt]

    int hi() const { return lo + int(terms.size()) - 1; }
    int index_of(int degree) const { return degree - lo; }
    bool has_degree(int degree) const { return degree >= lo && degree <= hi(); }
    const std::vector<Summand>& term(int degree) const {
        static const std::vector<Summand> none;
        return has_degree(degree) ? terms[index_of(degree)] : none;
    }
    int total_summands() const {
        int n = 0;
        for (auto& t : terms) n += int(t.size());
        return n;
    }

    Entry<K> dget(int degree, int s, int t) const {
        int k = index_of(degree);
        if (k < 0 || k >= int(diff.size())) return {};
        auto it = diff[k][s].find(t);
        return it == diff[k][s].end() ? Entry<K>{} : it->second;
    }
    void dset(int degree, int s, int t, Entry<K> e) {
        int k = index_of(degree);
        e.normalize();
        if (e.empty())
            diff[k][s].erase(t);
        else
            diff[k][s][t] = std::move(e);
    }
    void dadd(int degree, int s, int t, const Entry<K>& e) {
        int k = index_of(degree);
        auto& cell = diff[k][s][t];
        cell += e;
        if (cell.empty()) diff[k][s].erase(t);
    }

    void init_diff() {
        diff.assign(terms.size() > 0 ? terms.size() - 1 : 0, {});
        for (size_t k = 0; k + 1 < terms.size(); ++k) diff[k].assign(terms[k].size(), {});
    }

    /// d(d(x)) must vanish.
    bool d_squared_zero() const {
        for (int deg = lo; deg + 2 <= hi(); ++deg) {
            int k = index_of(deg);
            for (size_t s = 0; s < terms[k].size(); ++s) {
                std::map<int, Entry<K>> acc;
                for (auto& [mid, e1] : diff[k][s])
                    for (auto& [tgt, e2] : diff[k + 1][mid]) acc[tgt] += cat->compose(e2, e1);
                for (auto& [tgt, e] : acc)
                    if (!e.empty()) return false;
            }
        }
        return true;
    }
};

template <class K>
using RightCplx = Cplx<K, RightCat<K>>;
template <class K>
using EnvCplx = Cplx<K, EnvCat<K>>;

/// The algebra as a stalk complex in degree 0 (one summand per vertex).
template <class K>
RightCplx<K> stalk_complex(const RightCat<K>& cat) {
    RightCplx<K> P;
    P.cat = &cat;
    P.lo = 0;
    P.terms.resize(1);
    for (int v : cat.algebra().graph.vertices) P.terms[0].push_back({v, 0});
    P.init_diff();
    return P;
}

template <class K, class Cat>
Cplx<K, Cat> shift_complex(const Cplx<K, Cat>& X, int n) {
    // X[n]^k = X^{k+n}, differential scaled by (-1)^n
    Cplx<K, Cat> Y = X;
    Y.lo = X.lo - n;
    if (n % 2 != 0)
        for (auto& layer : Y.diff)
            for (auto& row : layer)
                for (auto& [t, e] : row)
                    for (auto& [key, c] : e.t) c = -c;
    return Y;
}

template <class K, class Cat>
Cplx<K, Cat> direct_sum(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y) {
    Cplx<K, Cat> Z;
    Z.cat = X.cat;
    Z.lo = std::min(X.lo, Y.lo);
    int hi = std::max(X.hi(), Y.hi());
    Z.terms.resize(hi - Z.lo + 1);
    for (int deg = Z.lo; deg <= hi; ++deg) {
        for (auto& s : X.term(deg)) Z.terms[Z.index_of(deg)].push_back(s);
        for (auto& s : Y.term(deg)) Z.terms[Z.index_of(deg)].push_back(s);
    }
    Z.init_diff();
    for (int deg = Z.lo; deg < hi; ++deg) {
        int offs = 0, offt = 0;
        if (X.has_degree(deg) && X.has_degree(deg + 1)) {
            int k = X.index_of(deg);
            for (size_t s = 0; s < X.terms[k].size(); ++s)
                for (auto& [t, e] : X.diff[k][s]) Z.dset(deg, int(s), t, e);
        }
        offs = int(X.term(deg).size());
        offt = int(X.term(deg + 1).size());
        if (Y.has_degree(deg) && Y.has_degree(deg + 1)) {
            int k = Y.index_of(deg);
            for (size_t s = 0; s < Y.terms[k].size(); ++s)
                for (auto& [t, e] : Y.diff[k][s]) Z.dset(deg, int(s) + offs, t + offt, e);
        }
    }
    return Z;
}

/// Inverse of an End-entry with invertible scalar part (local ring, geometric
/// series against the radical part).
template <class K, class Cat>
Entry<K> entry_inverse(const Cat& cat, typename Cat::Label lab, const Entry<K>& e) {
    K c = cat.scalar_part(lab, e);
    if (c.is_zero()) throw std::logic_error("entry_inverse: not invertible");
    K cinv = c.inv();
    Entry<K> n = cat.identity(lab);  // n = 1 - e/c
    n += e * (-cinv);
    Entry<K> inv = cat.identity(lab);
    Entry<K> pw = n;
    for (int guard = 0; guard < 64 && !pw.empty(); ++guard) {
        inv += pw;
        pw = cat.compose(pw, n);
    }
    inv = inv * cinv;
    return inv;
}

/// Gaussian-eliminate contractible pairs (invertible differential entries)
/// until minimal. Preserves the homotopy class.
template <class K, class Cat>
void minimize_complex(Cplx<K, Cat>& X) {
    const Cat& cat = *X.cat;
    if (X.terms.empty()) return;
    std::vector<std::vector<bool>> dead(X.terms.size());
    for (size_t k = 0; k < X.terms.size(); ++k) dead[k].assign(X.terms[k].size(), false);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int deg = X.lo; deg < X.hi() && !changed; ++deg) {
            int k = X.index_of(deg);
            for (size_t s = 0; s < X.terms[k].size() && !changed; ++s) {
                if (dead[k][s]) continue;
                for (auto& [t, e] : X.diff[k][s]) {
                    if (dead[k + 1][t]) continue;
                    if (!(X.terms[k][s].lab == X.terms[k + 1][t].lab)) continue;
                    K c = cat.scalar_part(X.terms[k][s].lab, e);
                    if (c.is_zero()) continue;
                    // pivot: eliminate summand s (deg) and t (deg+1)
                    Entry<K> inv = entry_inverse<K, Cat>(cat, X.terms[k][s].lab, e);
                    // collect row (s -> t') and column (s' -> t)
                    std::vector<std::pair<int, Entry<K>>> row, col;
                    for (auto& [t2, e2] : X.diff[k][s])
                        if (t2 != int(t) && !dead[k + 1][t2]) row.push_back({t2, e2});
                    for (size_t s2 = 0; s2 < X.terms[k].size(); ++s2) {
                        if (int(s2) == int(s) || dead[k][s2]) continue;
                        auto it = X.diff[k][s2].find(t);
                        if (it != X.diff[k][s2].end()) col.push_back({int(s2), it->second});
                    }
                    for (auto& [s2, a] : col)
                        for (auto& [t2, b] : row) {
                            // d(s2->t2) -= b ∘ inv ∘ a
                            Entry<K> upd = cat.compose(b, cat.compose(inv, a));
                            for (auto& [key, cc] : upd.t) cc = -cc;
                            X.dadd(deg, s2, t2, upd);
                        }
                    // erase pivot row/col and incoming/outgoing of dead summands
                    dead[k][s] = true;
                    dead[k + 1][t] = true;
                    X.diff[k][s].clear();
                    for (size_t s2 = 0; s2 < X.terms[k].size(); ++s2) X.diff[k][s2].erase(int(t));
                    if (k > 0)
                        for (size_t s0 = 0; s0 < X.terms[k - 1].size(); ++s0)
                            X.diff[k - 1][s0].erase(int(s));
                    if (k + 1 < int(X.diff.size())) X.diff[k + 1][t].clear();
                    changed = true;
                    break;
                }
            }
        }
    }

    // compact: drop dead summands, reindex
    Cplx<K, Cat> Y;
    Y.cat = X.cat;
    Y.lo = X.lo;
    Y.terms.resize(X.terms.size());
    std::vector<std::vector<int>> newidx(X.terms.size());
    for (size_t k = 0; k < X.terms.size(); ++k) {
        newidx[k].assign(X.terms[k].size(), -1);
        for (size_t s = 0; s < X.terms[k].size(); ++s)
            if (!dead[k][s]) {
                newidx[k][s] = int(Y.terms[k].size());
                Y.terms[k].push_back(X.terms[k][s]);
            }
    }
    Y.init_diff();
    for (size_t k = 0; k + 1 < X.terms.size(); ++k)
        for (size_t s = 0; s < X.terms[k].size(); ++s) {
            if (dead[k][s]) continue;
            for (auto& [t, e] : X.diff[k][s]) {
                if (dead[k + 1][t]) continue;
                Y.dset(Y.lo + int(k), newidx[k][s], newidx[k + 1][t], e);
            }
        }
    // trim empty boundary degrees
    while (!Y.terms.empty() && Y.terms.front().empty()) {
        Y.terms.erase(Y.terms.begin());
        if (!Y.diff.empty()) Y.diff.erase(Y.diff.begin());
        ++Y.lo;
    }
    while (!Y.terms.empty() && Y.terms.back().empty()) {
        Y.terms.pop_back();
        if (!Y.diff.empty()) Y.diff.pop_back();
    }
    if (Y.terms.empty()) {
        Y.lo = 0;
        Y.diff.clear();
    }
    X = std::move(Y);
}

// ---- realization ----

/// Sparse column-major linear map.
template <class K>
struct SpMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, K>>> col;

    static SpMat zero(int r, int c) {
        SpMat m;
        m.rows = r;
        m.cols = c;
        m.col.assign(c, {});
        return m;
    }
    void add(int r, int c, K v) {
        if (!v.is_zero()) col[c].push_back({r, v});
    }
    Vec<K> apply(const Vec<K>& x) const {
        Vec<K> out = Vec<K>::Zero(rows);
        for (int c = 0; c < cols; ++c) {
            if (x(c).is_zero()) continue;
            for (auto& [r, v] : col[c]) out(r) += x(c) * v;
        }
        return out;
    }
    Mat<K> dense() const {
        Mat<K> m = Mat<K>::Zero(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (auto& [r, v] : col[c]) m(r, c) += v;
        return m;
    }
};

/// A realized degree of a complex: concrete vector space with generator ops
/// (module structure), summand offsets and per-vector grades.
template <class K>
struct RealizedTerm {
    int dim = 0;
    std::vector<int> offset;  // per summand
    std::vector<int> grade;   // per basis vector
    std::vector<SpMat<K>> ops;
};

template <class K>
RealizedTerm<K> realize_term(const RightCat<K>& cat,
                             const std::vector<typename RightCplx<K>::Summand>& summands) {
    const Algebra<K>& A = cat.algebra();
    RealizedTerm<K> R;
    std::vector<std::vector<int>> bases;
    for (auto& s : summands) {
        R.offset.push_back(R.dim);
        bases.push_back(cat.realize_basis(s.lab));
        for (int k : bases.back()) R.grade.push_back(s.grade + A.basis[k].len);
        R.dim += int(bases.back().size());
    }
    int nv = A.num_vertices(), na = int(A.arrows.size());
    R.ops.assign(nv + na, SpMat<K>::zero(R.dim, R.dim));
    for (size_t si = 0; si < summands.size(); ++si) {
        const auto& basis = bases[si];
        std::map<int, int> local;
        for (size_t i = 0; i < basis.size(); ++i) local[basis[i]] = int(i);
        for (size_t i = 0; i < basis.size(); ++i) {
            int gi = R.offset[si] + int(i);
            for (int v = 0; v < nv; ++v)
                if (A.basis[basis[i]].tgt == A.graph.vertices[v]) R.ops[v].add(gi, gi, K(1));
            for (int a = 0; a < na; ++a) {
                Vec<K> img = A.rmul_arrow(A.unit_basis(basis[i]), a);
                for (int k = 0; k < A.dim(); ++k)
                    if (!img(k).is_zero()) R.ops[nv + a].add(R.offset[si] + local.at(k), gi, img(k));
            }
        }
    }
    return R;
}

template <class K>
RealizedTerm<K> realize_term(const EnvCat<K>& cat,
                             const std::vector<typename EnvCplx<K>::Summand>& summands) {
    const Algebra<K>& A = cat.algebra();
    RealizedTerm<K> R;
    // per summand: bases of Λe_i (tgt = i) and e_jΛ (src = j)
    struct B {
        std::vector<int> left, right;
        std::map<int, int> lloc, rloc;
    };
    std::vector<B> bases;
    for (auto& s : summands) {
        R.offset.push_back(R.dim);
        B b;
        for (int k = 0; k < A.dim(); ++k) {
            if (A.basis[k].tgt == s.lab.i) {
                b.lloc[k] = int(b.left.size());
                b.left.push_back(k);
            }
            if (A.basis[k].src == s.lab.j) {
                b.rloc[k] = int(b.right.size());
                b.right.push_back(k);
            }
        }
        for (int p : b.left)
            for (int q : b.right)
                R.grade.push_back(s.grade + A.basis[p].len + A.basis[q].len);
        R.dim += int(b.left.size() * b.right.size());
        bases.push_back(std::move(b));
    }
    int nv = A.num_vertices(), na = int(A.arrows.size());
    R.ops.assign(2 * (nv + na), SpMat<K>::zero(R.dim, R.dim));
    auto lidem = [&](int v) -> SpMat<K>& { return R.ops[v]; };
    auto larr = [&](int a) -> SpMat<K>& { return R.ops[nv + a]; };
    auto ridem = [&](int v) -> SpMat<K>& { return R.ops[nv + na + v]; };
    auto rarr = [&](int a) -> SpMat<K>& { return R.ops[2 * nv + na + a]; };
    for (size_t si = 0; si < summands.size(); ++si) {
        const B& b = bases[si];
        int nr = int(b.right.size());
        auto flat = [&](int pi, int qi) { return R.offset[si] + pi * nr + qi; };
        for (size_t pi = 0; pi < b.left.size(); ++pi)
            for (int qi = 0; qi < nr; ++qi) {
                int g = flat(int(pi), qi);
                int p = b.left[pi], q = b.right[qi];
                for (int v = 0; v < nv; ++v) {
                    if (A.basis[p].src == A.graph.vertices[v]) lidem(v).add(g, g, K(1));
                    if (A.basis[q].tgt == A.graph.vertices[v]) ridem(v).add(g, g, K(1));
                }
                for (int a = 0; a < na; ++a) {
                    Vec<K> img = A.lmul_arrow(a, A.unit_basis(p));
                    for (int k = 0; k < A.dim(); ++k)
                        if (!img(k).is_zero()) larr(a).add(flat(b.lloc.at(k), qi), g, img(k));
                    Vec<K> rimg = A.rmul_arrow(A.unit_basis(q), a);
                    for (int k = 0; k < A.dim(); ++k)
                        if (!rimg(k).is_zero()) rarr(a).add(flat(int(pi), b.rloc.at(k)), g, rimg(k));
                }
            }
    }
    return R;
}

/// Realize one differential entry as a sparse matrix block into dst.
template <class K>
void realize_entry(const RightCat<K>& cat, typename RightCat<K>::Label from,
                   typename RightCat<K>::Label to, const Entry<K>& e, SpMat<K>& dst, int row0,
                   int col0) {
    const Algebra<K>& A = cat.algebra();
    auto fb = cat.realize_basis(from);
    auto tb = cat.realize_basis(to);
    std::map<int, int> tloc;
    for (size_t i = 0; i < tb.size(); ++i) tloc[tb[i]] = int(i);
    for (size_t c = 0; c < fb.size(); ++c) {
        // x -> h x
        for (auto& [key, coef] : e.t) {
            Vec<K> img = A.mul(A.unit_basis(int(key)), A.unit_basis(fb[c]));
            for (int k = 0; k < A.dim(); ++k)
                if (!img(k).is_zero()) dst.add(row0 + tloc.at(k), col0 + int(c), coef * img(k));
        }
    }
}

template <class K>
void realize_entry(const EnvCat<K>& cat, typename EnvCat<K>::Label from,
                   typename EnvCat<K>::Label to, const Entry<K>& e, SpMat<K>& dst, int row0,
                   int col0) {
    const Algebra<K>& A = cat.algebra();
    std::vector<int> fl, fr, tl, tr;
    std::map<int, int> tlloc, trloc;
    for (int k = 0; k < A.dim(); ++k) {
        if (A.basis[k].tgt == from.i) fl.push_back(k);
        if (A.basis[k].src == from.j) fr.push_back(k);
        if (A.basis[k].tgt == to.i) {
            tlloc[k] = int(tl.size());
            tl.push_back(k);
        }
        if (A.basis[k].src == to.j) {
            trloc[k] = int(tr.size());
            tr.push_back(k);
        }
    }
    int fnr = int(fr.size()), tnr = int(tr.size());
    for (size_t pi = 0; pi < fl.size(); ++pi)
        for (int qi = 0; qi < fnr; ++qi) {
            int colIdx = col0 + int(pi) * fnr + qi;
            for (auto& [key, coef] : e.t) {
                auto [u, v] = unpack2(key);
                Vec<K> pu = A.mul(A.unit_basis(fl[pi]), A.unit_basis(int(u)));
                Vec<K> vq = A.mul(A.unit_basis(int(v)), A.unit_basis(fr[qi]));
                for (int kp = 0; kp < A.dim(); ++kp) {
                    if (pu(kp).is_zero()) continue;
                    for (int kq = 0; kq < A.dim(); ++kq) {
                        if (vq(kq).is_zero()) continue;
                        dst.add(row0 + tlloc.at(kp) * tnr + trloc.at(kq), colIdx,
                                coef * pu(kp) * vq(kq));
                    }
                }
            }
        }
}

template <class K, class Cat>
SpMat<K> realize_diff(const Cplx<K, Cat>& X, int degree, const RealizedTerm<K>& from,
                      const RealizedTerm<K>& to) {
    SpMat<K> d = SpMat<K>::zero(to.dim, from.dim);
    if (!X.has_degree(degree) || !X.has_degree(degree + 1)) return d;
    int k = X.index_of(degree);
    for (size_t s = 0; s < X.terms[k].size(); ++s)
        for (auto& [t, e] : X.diff[k][s])
            realize_entry(*X.cat, X.terms[k][s].lab, X.terms[k + 1][t].lab, e, d, to.offset[t],
                          from.offset[s]);
    return d;
}

/// Cohomology at one degree as a module (with section/projection data).
template <class K>
struct CohomologyData {
    ModuleK<K> H;
    Mat<K> section;          // H basis -> realized cycles
    Mat<K> cycle_basis;      // realized kernel basis (columns)
    RowSpace<K> im_in_ker{0};  // image coordinates inside the kernel basis
    std::vector<int> free;   // coordinates of H inside ker coords
    Vec<K> project(const Vec<K>& realized_cycle) const {
        auto sol = solve<K>(cycle_basis, realized_cycle);
        if (!sol) throw std::logic_error("project: not a cycle");
        Vec<K> r = im_in_ker.reduce(*sol);
        Vec<K> out(int(free.size()));
        for (size_t i = 0; i < free.size(); ++i) out(int(i)) = r(free[i]);
        return out;
    }
};

/// Kernel of a sparse matrix restricted per grade slice (d is
/// grade-preserving on realized bases).
template <class K>
Mat<K> graded_kernel(const SpMat<K>& d, const std::vector<int>& grade) {
    std::map<int, std::vector<int>> slices;
    for (size_t i = 0; i < grade.size(); ++i) slices[grade[i]].push_back(int(i));
    std::vector<Vec<K>> cols;
    Mat<K> dd = d.dense();
    for (auto& [g, idx] : slices) {
        Mat<K> block(d.rows, int(idx.size()));
        for (size_t c = 0; c < idx.size(); ++c) block.col(int(c)) = dd.col(idx[c]);
        Mat<K> ker = nullspace<K>(block);
        for (int c = 0; c < ker.cols(); ++c) {
            Vec<K> v = Vec<K>::Zero(d.cols);
            for (size_t i = 0; i < idx.size(); ++i) v(idx[i]) = ker(int(i), c);
            cols.push_back(v);
        }
    }
    Mat<K> out(d.cols, int(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) out.col(int(c)) = cols[c];
    return out;
}

template <class K>
CohomologyData<K> cohomology_at(const RealizedTerm<K>& R, const SpMat<K>& d_in,
                                const SpMat<K>& d_out) {
    CohomologyData<K> C;
    C.cycle_basis = graded_kernel(d_out, R.grade);
    int z = int(C.cycle_basis.cols());
    C.im_in_ker = RowSpace<K>(z);
    for (int c = 0; c < d_in.cols; ++c) {
        Vec<K> unit = Vec<K>::Zero(d_in.cols);
        unit(c) = K(1);
        Vec<K> img = d_in.apply(unit);
        if (img.isZero(0)) continue;
        auto sol = solve<K>(C.cycle_basis, img);
        if (!sol) throw std::logic_error("cohomology_at: image not in kernel");
        C.im_in_ker.add(*sol);
    }
    std::vector<bool> pivot(z, false);
    for (int p : C.im_in_ker.pivots()) pivot[p] = true;
    for (int i = 0; i < z; ++i)
        if (!pivot[i]) C.free.push_back(i);
    int h = int(C.free.size());
    C.section = Mat<K>::Zero(R.dim, h);
    for (int j = 0; j < h; ++j) {
        Vec<K> coord = Vec<K>::Zero(z);
        coord(C.free[j]) = K(1);
        C.section.col(j) = C.cycle_basis * coord;
    }
    C.H.dim = h;
    for (const auto& op : R.ops) {
        Mat<K> m(h, h);
        for (int j = 0; j < h; ++j) m.col(j) = C.project(op.apply(C.section.col(j)));
        C.H.ops.push_back(m);
    }
    return C;
}

/// Cohomology module of a complex at one degree.
template <class K, class Cat>
CohomologyData<K> cohomology(const Cplx<K, Cat>& X, int degree) {
    RealizedTerm<K> here = realize_term(*X.cat, X.term(degree));
    RealizedTerm<K> below = realize_term(*X.cat, X.term(degree - 1));
    RealizedTerm<K> above = realize_term(*X.cat, X.term(degree + 1));
    SpMat<K> din = realize_diff(X, degree - 1, below, here);
    SpMat<K> dout = realize_diff(X, degree, here, above);
    return cohomology_at(here, din, dout);
}

}  // namespace preproj
