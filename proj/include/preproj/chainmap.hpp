// Chain maps between projective complexes: solution spaces (optionally
// grade-restricted), homotopy quotients, cones, isomorphism testing and
// strict direct-sum decomposition via idempotent splitting.
#pragma once

#include "preproj/projcat.hpp"

namespace preproj {

/// Per-degree dense matrix of hom entries (rows = target summands).
template <class K>
struct EMat {
    int rows = 0, cols = 0;
    std::vector<Entry<K>> a;
    EMat() = default;
    EMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    Entry<K>& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Entry<K>& at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

template <class K, class Cat>
EMat<K> diff_emat(const Cplx<K, Cat>& X, int degree) {
    EMat<K> m(int(X.term(degree + 1).size()), int(X.term(degree).size()));
    if (!X.has_degree(degree) || !X.has_degree(degree + 1)) return m;
    int k = X.index_of(degree);
    for (size_t s = 0; s < X.terms[k].size(); ++s)
        for (auto& [t, e] : X.diff[k][s]) m.at(t, int(s)) = e;
    return m;
}

template <class K, class Cat>
EMat<K> emat_compose(const Cat& cat, const EMat<K>& f, const EMat<K>& g) {
    // f ∘ g
    EMat<K> h(f.rows, g.cols);
    for (int r = 0; r < f.rows; ++r)
        for (int c = 0; c < g.cols; ++c) {
            Entry<K> acc;
            for (int m = 0; m < f.cols; ++m) {
                if (f.at(r, m).empty() || g.at(m, c).empty()) continue;
                acc += cat.compose(f.at(r, m), g.at(m, c));
            }
            h.at(r, c) = std::move(acc);
        }
    return h;
}

template <class K>
EMat<K> emat_add(const EMat<K>& f, const EMat<K>& g, K sign = K(1)) {
    EMat<K> h = f;
    for (int r = 0; r < f.rows; ++r)
        for (int c = 0; c < f.cols; ++c) h.at(r, c) += g.at(r, c) * sign;
    return h;
}

/// A chain map X -> Y (degree 0 components).
template <class K, class Cat>
struct ChainMapped {
    std::map<int, EMat<K>> comp;  // per degree
};

/// Slot table of potential chain-map components.
template <class K, class Cat>
struct MapSlots {
    struct Slot {
        int degree, src, tgt;
        uint64_t key;
    };
    std::vector<Slot> slots;
    std::map<std::tuple<int, int, int, uint64_t>, int> index;

    void add(int d, int s, int t, uint64_t key) {
        index[{d, s, t, key}] = int(slots.size());
        slots.push_back({d, s, t, key});
    }
    int find(int d, int s, int t, uint64_t key) const {
        auto it = index.find({d, s, t, key});
        return it == index.end() ? -1 : it->second;
    }
    int size() const { return int(slots.size()); }
};

/// Enumerate slots for maps X^d -> Y^{d+off}; graded mode keeps only
/// grade-compatible components.
template <class K, class Cat>
MapSlots<K, Cat> enumerate_slots(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y, int off,
                                 bool graded) {
    MapSlots<K, Cat> S;
    const Cat& cat = *X.cat;
    for (int d = X.lo; d <= X.hi(); ++d) {
        if (!Y.has_degree(d + off)) continue;
        const auto& xs = X.term(d);
        const auto& ys = Y.term(d + off);
        for (size_t s = 0; s < xs.size(); ++s)
            for (size_t t = 0; t < ys.size(); ++t)
                for (uint64_t key : cat.hom_basis(xs[s].lab, ys[t].lab)) {
                    if (graded && xs[s].grade + cat.term_grade(key) != ys[t].grade) continue;
                    S.add(d, int(s), int(t), key);
                }
    }
    return S;
}

/// The linear space of chain maps X -> Y as coefficient vectors over slots.
template <class K, class Cat>
struct ChainMapSpace {
    const Cplx<K, Cat>* X = nullptr;
    const Cplx<K, Cat>* Y = nullptr;
    MapSlots<K, Cat> slots;
    std::vector<Vec<K>> basis;

    ChainMapped<K, Cat> materialize(const Vec<K>& coef) const {
        ChainMapped<K, Cat> f;
        for (int d = X->lo; d <= X->hi(); ++d)
            if (Y->has_degree(d))
                f.comp.emplace(d, EMat<K>(int(Y->term(d).size()), int(X->term(d).size())));
        for (int i = 0; i < slots.size(); ++i) {
            if (coef(i).is_zero()) continue;
            auto& sl = slots.slots[i];
            f.comp.at(sl.degree).at(sl.tgt, sl.src) +=
                Entry<K>{{{sl.key, coef(i)}}} * K(1);
        }
        return f;
    }
};

/// Solve f d_X = d_Y f. Returns the full solution space.
template <class K, class Cat>
ChainMapSpace<K, Cat> chain_map_space(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y, bool graded) {
    const Cat& cat = *X.cat;
    ChainMapSpace<K, Cat> out;
    out.X = &X;
    out.Y = &Y;
    out.slots = enumerate_slots<K, Cat>(X, Y, 0, graded);
    int n = out.slots.size();
    if (n == 0) return out;

    // equations indexed by (degree d, src s in X^d, tgt t' in Y^{d+1}, hom key)
    std::map<std::tuple<int, int, int, uint64_t>, std::map<int, K>> rows;
    auto addterm = [&](int d, int s, int tp, const Entry<K>& e, int slot, K sign) {
        for (auto& [key, c] : e.t) rows[{d, s, tp, key}][slot] += sign * c;
    };
    for (int d = X.lo; d <= X.hi(); ++d) {
        // d_Y ∘ f_d
        if (Y.has_degree(d) && Y.has_degree(d + 1)) {
            int ky = Y.index_of(d);
            for (size_t s = 0; s < X.term(d).size(); ++s)
                for (size_t t = 0; t < Y.term(d).size(); ++t)
                    for (uint64_t key : cat.hom_basis(X.term(d)[s].lab, Y.term(d)[t].lab)) {
                        int slot = out.slots.find(d, int(s), int(t), key);
                        if (slot < 0) continue;
                        for (auto& [tp, e] : Y.diff[ky][t]) {
                            Entry<K> comp = cat.compose(e, Entry<K>{{{key, K(1)}}});
                            addterm(d, int(s), tp, comp, slot, K(1));
                        }
                    }
        }
        // f_{d+1} ∘ d_X
        if (X.has_degree(d) && X.has_degree(d + 1)) {
            int kx = X.index_of(d);
            for (size_t s = 0; s < X.term(d).size(); ++s)
                for (auto& [sp, e] : X.diff[kx][s]) {
                    if (!Y.has_degree(d + 1)) continue;
                    for (size_t t = 0; t < Y.term(d + 1).size(); ++t)
                        for (uint64_t key :
                             cat.hom_basis(X.term(d + 1)[sp].lab, Y.term(d + 1)[t].lab)) {
                            int slot = out.slots.find(d + 1, sp, int(t), key);
                            if (slot < 0) continue;
                            Entry<K> comp = cat.compose(Entry<K>{{{key, K(1)}}}, e);
                            addterm(d, int(s), int(t), comp, slot, K(-1));
                        }
                }
        }
    }
    Mat<K> sys = Mat<K>::Zero(int(rows.size()), n);
    int r = 0;
    for (auto& [eq, terms] : rows) {
        for (auto& [slot, c] : terms) sys(r, slot) = c;
        ++r;
    }
    Mat<K> ker = nullspace<K>(sys);
    for (int c = 0; c < ker.cols(); ++c) out.basis.push_back(ker.col(c));
    return out;
}

/// Coefficient vectors (in the slot space of chain maps) of all null-homotopic
/// maps dY h + h dX, h of degree -1.
template <class K, class Cat>
std::vector<Vec<K>> homotopy_image(const ChainMapSpace<K, Cat>& cm, bool graded) {
    const Cplx<K, Cat>& X = *cm.X;
    const Cplx<K, Cat>& Y = *cm.Y;
    const Cat& cat = *X.cat;
    MapSlots<K, Cat> hs = enumerate_slots<K, Cat>(X, Y, -1, graded);
    std::vector<Vec<K>> out;
    for (int i = 0; i < hs.size(); ++i) {
        auto& sl = hs.slots[i];
        Vec<K> img = Vec<K>::Zero(cm.slots.size());
        bool inexact = false;
        Entry<K> h{{{sl.key, K(1)}}};
        // dY ∘ h  at degree sl.degree
        int d = sl.degree;
        if (Y.has_degree(d - 1) && Y.has_degree(d)) {
            int ky = Y.index_of(d - 1);
            for (auto& [tp, e] : Y.diff[ky][sl.tgt]) {
                Entry<K> comp = cat.compose(e, h);
                for (auto& [key, c] : comp.t) {
                    int slot = cm.slots.find(d, sl.src, tp, key);
                    if (slot < 0) { inexact = true; continue; }
                    img(slot) += c;
                }
            }
        }
        // h ∘ dX contributes at degree d-1
        if (X.has_degree(d - 1)) {
            int kx = X.index_of(d - 1);
            for (size_t s0 = 0; s0 < X.term(d - 1).size(); ++s0) {
                auto it = X.diff[kx][s0].find(sl.src);
                if (it == X.diff[kx][s0].end()) continue;
                Entry<K> comp = cat.compose(h, it->second);
                for (auto& [key, c] : comp.t) {
                    int slot = cm.slots.find(d - 1, int(s0), sl.tgt, key);
                    if (slot < 0) { inexact = true; continue; }
                    img(slot) += c;
                }
            }
        }
        if (inexact)
            throw std::logic_error("homotopy_image: slot table closed incorrectly");
        out.push_back(img);
    }
    return out;
}

/// dim Hom_{K^b}(X, Y[off]) plus representative chain maps.
template <class K, class Cat>
struct HomotopyHom {
    int dim = 0;
    ChainMapSpace<K, Cat> space;       // chain maps X -> Y[off] (Y pre-shifted)
    std::vector<Vec<K>> reps;          // class representatives
    Cplx<K, Cat> shifted;              // owned shifted copy of Y
};

template <class K, class Cat>
void homotopy_quotient(ChainMapSpace<K, Cat>& space, bool graded, int& dim_out,
                       std::vector<Vec<K>>& reps_out) {
    std::vector<Vec<K>> hom = homotopy_image(space, graded);
    RowSpace<K> hspace(space.slots.size() == 0 ? 1 : space.slots.size());
    if (space.slots.size() > 0)
        for (auto& v : hom) hspace.add(v);
    RowSpace<K> all = hspace;
    dim_out = 0;
    reps_out.clear();
    for (auto& b : space.basis) {
        if (space.slots.size() == 0) break;
        if (all.add(b)) {
            ++dim_out;
            reps_out.push_back(b);
        }
    }
}

/// Hom_{K^b(proj)}(X, Y[off]): dimension and representatives.
template <class K, class Cat>
HomotopyHom<K, Cat> homotopy_hom(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y, int off,
                                 bool graded = false) {
    HomotopyHom<K, Cat> H;
    H.shifted = shift_complex(Y, off);
    H.space = chain_map_space<K, Cat>(X, H.shifted, graded);
    // repoint to the owned copy
    H.space.Y = &H.shifted;
    homotopy_quotient(H.space, graded, H.dim, H.reps);
    return H;
}

/// Hom_{K^b}(X, Y) with explicit class coordinates: a basis of homotopy
/// classes together with the machinery to reduce any chain map to its class.
template <class K, class Cat>
struct HomClasses {
    ChainMapSpace<K, Cat> space;
    std::vector<Vec<K>> reps;
    RowSpace<K> homotopies{1};
    Mat<K> basisM;

    int dim() const { return int(reps.size()); }
    Vec<K> slots_of(const ChainMapped<K, Cat>& f) const {
        Vec<K> coef = Vec<K>::Zero(std::max(space.slots.size(), 1));
        for (auto& [d, m] : f.comp)
            for (int r = 0; r < m.rows; ++r)
                for (int c = 0; c < m.cols; ++c)
                    for (auto& [key, cc] : m.at(r, c).t) {
                        int slot = space.slots.find(d, c, r, key);
                        if (slot < 0) throw std::logic_error("HomClasses: entry outside slots");
                        coef(slot) += cc;
                    }
        return coef;
    }
    Vec<K> class_of_slots(const Vec<K>& coef) const {
        auto sol = solve<K>(basisM, coef);
        if (!sol) throw std::logic_error("HomClasses: not a chain map");
        Vec<K> out(dim());
        for (int i = 0; i < dim(); ++i) out(i) = (*sol)(i);
        return out;
    }
    Vec<K> class_of(const ChainMapped<K, Cat>& f) const { return class_of_slots(slots_of(f)); }
    ChainMapped<K, Cat> materialize_class(const Vec<K>& cls) const {
        Vec<K> coef = Vec<K>::Zero(std::max(space.slots.size(), 1));
        for (int i = 0; i < dim(); ++i) coef += cls(i) * reps[i];
        return space.materialize(coef);
    }
};

template <class K, class Cat>
HomClasses<K, Cat> hom_classes(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y) {
    HomClasses<K, Cat> H;
    H.space = chain_map_space<K, Cat>(X, Y, false);
    std::vector<Vec<K>> hom = homotopy_image(H.space, false);
    int n = std::max(H.space.slots.size(), 1);
    H.homotopies = RowSpace<K>(n);
    for (auto& h : hom) H.homotopies.add(h);
    RowSpace<K> all = H.homotopies;
    for (auto& b : H.space.basis)
        if (all.add(b)) H.reps.push_back(b);
    H.basisM = Mat<K>::Zero(n, H.dim() + H.homotopies.rank());
    for (int i = 0; i < H.dim(); ++i) H.basisM.col(i) = H.reps[i];
    for (int i = 0; i < H.homotopies.rank(); ++i)
        H.basisM.col(H.dim() + i) = H.homotopies.rows()[i];
    return H;
}

/// Compose chain maps degreewise: g ∘ f for f: X -> Y, g: Y -> Z.
template <class K, class Cat>
ChainMapped<K, Cat> compose_maps(const Cat& cat, const ChainMapped<K, Cat>& g,
                                 const ChainMapped<K, Cat>& f) {
    ChainMapped<K, Cat> h;
    for (auto& [d, fm] : f.comp) {
        auto it = g.comp.find(d);
        if (it == g.comp.end()) continue;
        h.comp.emplace(d, emat_compose(cat, it->second, fm));
    }
    return h;
}

/// The identity chain map of a complex.
template <class K, class Cat>
ChainMapped<K, Cat> identity_map(const Cplx<K, Cat>& X) {
    ChainMapped<K, Cat> f;
    for (int d = X.lo; d <= X.hi(); ++d) {
        EMat<K> m(int(X.term(d).size()), int(X.term(d).size()));
        for (size_t s = 0; s < X.term(d).size(); ++s)
            m.at(int(s), int(s)) = X.cat->identity(X.term(d)[s].lab);
        f.comp.emplace(d, std::move(m));
    }
    return f;
}

/// Mapping cone of a chain map f: X -> Y.
template <class K, class Cat>
Cplx<K, Cat> cone(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y, const ChainMapped<K, Cat>& f) {
    Cplx<K, Cat> C;
    C.cat = X.cat;
    C.lo = std::min(X.lo - 1, Y.lo);
    int hi = std::max(X.hi() - 1, Y.hi());
    C.terms.assign(hi - C.lo + 1, {});
    // C^k = X^{k+1} (+) Y^k
    std::vector<std::vector<int>> xoff(C.terms.size()), yoff(C.terms.size());
    for (int k = C.lo; k <= hi; ++k) {
        auto& dst = C.terms[C.index_of(k)];
        for (auto& s : X.term(k + 1)) dst.push_back(s);
        for (auto& s : Y.term(k)) dst.push_back(s);
    }
    C.init_diff();
    for (int k = C.lo; k < hi; ++k) {
        int nx = int(X.term(k + 1).size());
        int nx2 = int(X.term(k + 2).size());
        (void)nx2;
        // -d_X : X^{k+1} -> X^{k+2}
        if (X.has_degree(k + 1) && X.has_degree(k + 2)) {
            int kx = X.index_of(k + 1);
            for (size_t s = 0; s < X.terms[kx].size(); ++s)
                for (auto& [t, e] : X.diff[kx][s]) C.dadd(k, int(s), t, e * K(-1));
        }
        // f^{k+1} : X^{k+1} -> Y^{k+1}
        if (X.has_degree(k + 1) && Y.has_degree(k + 1)) {
            auto it = f.comp.find(k + 1);
            if (it != f.comp.end()) {
                const EMat<K>& m = it->second;
                int nxNext = int(X.term(k + 2).size());
                for (int s = 0; s < m.cols; ++s)
                    for (int t = 0; t < m.rows; ++t)
                        if (!m.at(t, s).empty()) C.dadd(k, s, nxNext + t, m.at(t, s));
            }
        }
        // d_Y : Y^k -> Y^{k+1}
        if (Y.has_degree(k) && Y.has_degree(k + 1)) {
            int ky = Y.index_of(k);
            int nxNext = int(X.term(k + 2).size());
            for (size_t s = 0; s < Y.terms[ky].size(); ++s)
                for (auto& [t, e] : Y.diff[ky][s]) C.dadd(k, nx + int(s), nxNext + t, e);
        }
    }
    return C;
}

/// Label multisets per degree (iso invariant for minimal complexes).
template <class K, class Cat>
bool same_shape(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y) {
    if (X.lo != Y.lo || X.terms.size() != Y.terms.size()) return false;
    for (size_t k = 0; k < X.terms.size(); ++k) {
        std::vector<typename Cat::Label> a, b;
        for (auto& s : X.terms[k]) a.push_back(s.lab);
        for (auto& s : Y.terms[k]) b.push_back(s.lab);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

/// Is the chain map an isomorphism of complexes? (Minimal complexes: check
/// the scalar-part block matrices degreewise.)
template <class K, class Cat>
bool is_iso_chain_map(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y,
                      const ChainMapped<K, Cat>& f) {
    const Cat& cat = *X.cat;
    for (int d = std::min(X.lo, Y.lo); d <= std::max(X.hi(), Y.hi()); ++d) {
        const auto& xs = X.term(d);
        const auto& ys = Y.term(d);
        if (xs.size() != ys.size()) return false;
        if (xs.empty()) continue;
        auto it = f.comp.find(d);
        if (it == f.comp.end()) return false;
        Mat<K> scalar = Mat<K>::Zero(int(ys.size()), int(xs.size()));
        for (size_t s = 0; s < xs.size(); ++s)
            for (size_t t = 0; t < ys.size(); ++t) {
                if (!(xs[s].lab == ys[t].lab)) continue;
                scalar(int(t), int(s)) = cat.scalar_part(xs[s].lab, it->second.at(int(t), int(s)));
            }
        if (!is_invertible(scalar)) return false;
    }
    return true;
}

/// Isomorphism in C^b(proj): minimal forms assumed. Randomized over the
/// chain-map space, then a deterministic summand-matching fallback.
template <class K, class Cat>
bool complex_iso_minimal(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y, uint64_t seed = 31,
                         int trials = 50);

/// Strict direct-sum decomposition of a minimal complex into indecomposables.
template <class K, class Cat>
std::vector<Cplx<K, Cat>> decompose_complex(const Cplx<K, Cat>& P, uint64_t seed = 41);

namespace detail {

/// End_{K^b}(P) of a minimal complex as an abstract algebra, with the chain
/// map space and class representatives.
template <class K, class Cat>
struct ComplexEnd {
    ChainMapSpace<K, Cat> space;
    std::vector<Vec<K>> reps;          // homotopy-class representatives
    RowSpace<K> homotopies{1};
    FinAlgebra<K> alg;                 // on the rep coordinates
};

template <class K, class Cat>
ComplexEnd<K, Cat> complex_end(const Cplx<K, Cat>& P) {
    ComplexEnd<K, Cat> E;
    E.space = chain_map_space<K, Cat>(P, P, false);
    std::vector<Vec<K>> hom = homotopy_image(E.space, false);
    int n = std::max(E.space.slots.size(), 1);
    E.homotopies = RowSpace<K>(n);
    for (auto& h : hom) E.homotopies.add(h);
    RowSpace<K> all = E.homotopies;
    for (auto& b : E.space.basis)
        if (all.add(b)) E.reps.push_back(b);
    int d = int(E.reps.size());
    // coordinates: [reps | homotopy basis] solve
    const Cplx<K, Cat>* Pp = E.space.X;
    const Cat& cat = *Pp->cat;
    auto compose_coef = [Pp, &cat, &E](const Vec<K>& x, const Vec<K>& y) {
        ChainMapped<K, Cat> fx = E.space.materialize(x);
        ChainMapped<K, Cat> fy = E.space.materialize(y);
        Vec<K> coef = Vec<K>::Zero(E.space.slots.size());
        for (int dd = Pp->lo; dd <= Pp->hi(); ++dd) {
            EMat<K> comp = emat_compose(cat, fx.comp.at(dd), fy.comp.at(dd));
            for (int r = 0; r < comp.rows; ++r)
                for (int c = 0; c < comp.cols; ++c)
                    for (auto& [key, cc] : comp.at(r, c).t) {
                        int slot = E.space.slots.find(dd, c, r, key);
                        if (slot < 0) throw std::logic_error("complex_end: slot missing");
                        coef(slot) += cc;
                    }
        }
        return coef;
    };
    // class coordinates on rep basis
    Mat<K> basisM(std::max(E.space.slots.size(), 1), d + E.homotopies.rank());
    for (int i = 0; i < d; ++i) basisM.col(i) = E.reps[i];
    for (int i = 0; i < E.homotopies.rank(); ++i) basisM.col(d + i) = E.homotopies.rows()[i];
    auto to_class = [basisM, d](const Vec<K>& coef) {
        auto sol = solve<K>(basisM, coef);
        if (!sol) throw std::logic_error("complex_end: class coordinates failed");
        Vec<K> out(d);
        for (int i = 0; i < d; ++i) out(i) = (*sol)(i);
        return out;
    };
    E.alg.dim = d;
    std::vector<Vec<K>> reps = E.reps;
    E.alg.mul = [compose_coef, to_class, reps, d](const Vec<K>& x, const Vec<K>& y) {
        int n = reps.empty() ? 0 : int(reps[0].size());
        Vec<K> cx = Vec<K>::Zero(n), cy = Vec<K>::Zero(n);
        for (int i = 0; i < d; ++i) {
            cx += x(i) * reps[i];
            cy += y(i) * reps[i];
        }
        return to_class(compose_coef(cx, cy));
    };
    // identity chain map coefficients
    Vec<K> idc = Vec<K>::Zero(std::max(E.space.slots.size(), 1));
    const Cplx<K, Cat>& P2 = *Pp;
    for (int dd = P2.lo; dd <= P2.hi(); ++dd)
        for (size_t s = 0; s < P2.term(dd).size(); ++s) {
            Entry<K> id = cat.identity(P2.term(dd)[s].lab);
            for (auto& [key, c] : id.t) {
                int slot = E.space.slots.find(dd, int(s), int(s), key);
                if (slot < 0) throw std::logic_error("complex_end: identity slot missing");
                idc(slot) += c;
            }
        }
    E.alg.one = to_class(idc);
    return E;
}

}  // namespace detail

template <class K, class Cat>
bool complex_indec_iso(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y) {
    if (!same_shape(X, Y)) return false;
    auto F = chain_map_space<K, Cat>(X, Y, false);
    auto G = chain_map_space<K, Cat>(Y, X, false);
    // rad of End(X): compositions not in rad witness the iso
    detail::ComplexEnd<K, Cat> E = detail::complex_end(X);
    Mat<K> radb = E.alg.radical_basis();
    RowSpace<K> rad(std::max(E.alg.dim, 1));
    for (int c = 0; c < radb.cols(); ++c) rad.add(radb.col(c));
    const Cat& cat = *X.cat;
    for (auto& fb : F.basis)
        for (auto& gb : G.basis) {
            ChainMapped<K, Cat> f = F.materialize(fb);
            ChainMapped<K, Cat> g = G.materialize(gb);
            Vec<K> coef = Vec<K>::Zero(E.space.slots.size());
            for (int d = X.lo; d <= X.hi(); ++d) {
                EMat<K> comp = emat_compose(cat, g.comp.at(d), f.comp.at(d));
                for (int r = 0; r < comp.rows; ++r)
                    for (int c = 0; c < comp.cols; ++c)
                        for (auto& [key, cc] : comp.at(r, c).t) {
                            int slot = E.space.slots.find(d, c, r, key);
                            if (slot >= 0) coef(slot) += cc;
                        }
            }
            // class of g f modulo homotopy, in rep coordinates
            int dmm = int(E.reps.size());
            Mat<K> basisM(std::max(E.space.slots.size(), 1), dmm + E.homotopies.rank());
            for (int i = 0; i < dmm; ++i) basisM.col(i) = E.reps[i];
            for (int i = 0; i < E.homotopies.rank(); ++i)
                basisM.col(dmm + i) = E.homotopies.rows()[i];
            auto sol = solve<K>(basisM, coef);
            if (!sol) continue;
            Vec<K> cls(dmm);
            for (int i = 0; i < dmm; ++i) cls(i) = (*sol)(i);
            if (!rad.contains(cls)) return true;
        }
    return false;
}

template <class K, class Cat>
bool complex_iso_minimal(const Cplx<K, Cat>& X, const Cplx<K, Cat>& Y, uint64_t seed, int trials) {
    if (!same_shape(X, Y)) return false;
    if (X.total_summands() == 0) return true;
    ChainMapSpace<K, Cat> F = chain_map_space<K, Cat>(X, Y, false);
    if (F.basis.empty()) return false;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Vec<K> coef = Vec<K>::Zero(F.slots.size());
        for (auto& b : F.basis) coef += rng.scalar<K>() * b;
        if (is_iso_chain_map(X, Y, F.materialize(coef))) return true;
    }
    // deterministic fallback: match indecomposable summands
    auto dx = decompose_complex(X, seed + 1);
    auto dy = decompose_complex(Y, seed + 2);
    if (dx.size() != dy.size()) return false;
    std::vector<bool> used(dy.size(), false);
    for (auto& a : dx) {
        bool matched = false;
        for (size_t j = 0; j < dy.size(); ++j) {
            if (used[j]) continue;
            if (complex_indec_iso(a, dy[j])) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

namespace detail {

/// Conjugate the complex by degreewise invertible entry matrices g (new
/// differential g_{k+1}^{-1} d g_k), returning the transported chain map.
template <class K, class Cat>
EMat<K> emat_identity(const Cat& cat, const std::vector<typename Cplx<K, Cat>::Summand>& t) {
    EMat<K> m(int(t.size()), int(t.size()));
    for (size_t i = 0; i < t.size(); ++i) m.at(int(i), int(i)) = cat.identity(t[i].lab);
    return m;
}

/// Inverse of an entry matrix whose scalar-part block matrix is invertible.
template <class K, class Cat>
EMat<K> emat_inverse(const Cat& cat, const std::vector<typename Cplx<K, Cat>::Summand>& t,
                     const EMat<K>& m) {
    int n = m.rows;
    // scalar part (same-label blocks only)
    Mat<K> S = Mat<K>::Zero(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (t[r].lab == t[c].lab) S(r, c) = cat.scalar_part(t[c].lab, m.at(r, c));
    auto Sinv = inverse<K>(S);
    if (!Sinv) throw std::logic_error("emat_inverse: scalar part singular");
    EMat<K> SinvE(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (t[r].lab == t[c].lab && !(*Sinv)(r, c).is_zero())
                SinvE.at(r, c) = cat.identity(t[r].lab) * (*Sinv)(r, c);
    // N = 1 - Sinv m ; inverse = (sum N^k) Sinv
    EMat<K> I = emat_identity<K, Cat>(cat, t);
    EMat<K> N = emat_add(I, emat_compose(cat, SinvE, m), K(-1));
    EMat<K> acc = I, pw = N;
    for (int guard = 0; guard < 64; ++guard) {
        bool zero = true;
        for (auto& e : pw.a)
            if (!e.empty()) zero = false;
        if (zero) break;
        acc = emat_add(acc, pw);
        pw = emat_compose(cat, pw, N);
    }
    return emat_compose(cat, acc, SinvE);
}

}  // namespace detail

template <class K, class Cat>
std::vector<Cplx<K, Cat>> decompose_complex(const Cplx<K, Cat>& P, uint64_t seed) {
    if (P.total_summands() == 0) return {};
    if (P.total_summands() == 1) return {P};
    if constexpr (!std::is_same_v<K, Fp>) return {P};
    const Cat& cat = *P.cat;
    detail::ComplexEnd<K, Cat> E = detail::complex_end(P);
    std::optional<Vec<Fp>> ecls = nontrivial_idempotent(E.alg, seed);
    if (!ecls) return {P};

    // strict chain-map representative, Newton-purified against the nilpotent
    // ideal of radical-entried endomorphisms
    Vec<K> coef = Vec<K>::Zero(std::max(E.space.slots.size(), 1));
    for (int i = 0; i < int(E.reps.size()); ++i) coef += (*ecls)(i)*E.reps[i];
    ChainMapped<K, Cat> e = E.space.materialize(coef);
    auto square = [&](const ChainMapped<K, Cat>& f) {
        ChainMapped<K, Cat> g;
        for (auto& [d, m] : f.comp) g.comp.emplace(d, emat_compose(cat, m, m));
        return g;
    };
    auto equal = [&](const ChainMapped<K, Cat>& f, const ChainMapped<K, Cat>& g) {
        for (auto& [d, m] : f.comp) {
            const EMat<K>& o = g.comp.at(d);
            for (size_t i = 0; i < m.a.size(); ++i)
                if (!(m.a[i] == o.a[i])) return false;
        }
        return true;
    };
    for (int it = 0; it < 64; ++it) {
        ChainMapped<K, Cat> e2 = square(e);
        if (equal(e2, e)) break;
        ChainMapped<K, Cat> res;  // 3 e^2 - 2 e^3
        for (auto& [d, m] : e2.comp) {
            EMat<K> e3 = emat_compose(cat, m, e.comp.at(d));
            EMat<K> three = emat_add(emat_add(m, m), m);
            res.comp.emplace(d, emat_add(three, emat_add(e3, e3), K(-1)));
        }
        e = std::move(res);
    }
    if (!equal(square(e), e)) throw std::logic_error("decompose_complex: idempotent lift failed");

    // numeric diagonalization of scalar parts per degree, then the standard
    // conjugation g = eD + (1-e)(1-D), g^{-1} e g = D
    Cplx<K, Cat> Q = P;
    std::map<int, EMat<K>> conj, conjinv;
    std::map<int, std::vector<int>> keep;  // summand indices with D = 1
    for (int d = P.lo; d <= P.hi(); ++d) {
        const auto& t = P.term(d);
        int n = int(t.size());
        Mat<K> S = Mat<K>::Zero(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (t[r].lab == t[c].lab)
                    S(r, c) = cat.scalar_part(t[c].lab, e.comp.at(d).at(r, c));
        // S idempotent numeric; basis: im columns then ker columns
        // (restricted per label block to keep entries label-homogeneous)
        Mat<K> U = Mat<K>::Zero(n, n);
        std::vector<int> sel;
        {
            // group indices by label
            std::map<typename Cat::Label, std::vector<int>> blocks;
            for (int i = 0; i < n; ++i) blocks[t[i].lab].push_back(i);
            int placed = 0;
            std::vector<std::pair<int, int>> order;  // (col in U, summand index class)
            (void)placed;
            std::vector<Vec<K>> cols;
            std::vector<bool> is_im;
            for (auto& [lab, idx] : blocks) {
                int m = int(idx.size());
                Mat<K> B(m, m);
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c) B(r, c) = S(idx[r], idx[c]);
                // im basis
                RowSpace<K> im(m);
                std::vector<Vec<K>> imcols;
                for (int c = 0; c < m; ++c)
                    if (im.add(B.col(c))) imcols.push_back(B.col(c));
                Mat<K> kerB = nullspace<K>(B);
                for (auto& v : imcols) {
                    Vec<K> full = Vec<K>::Zero(n);
                    for (int r = 0; r < m; ++r) full(idx[r]) = v(r);
                    cols.push_back(full);
                    is_im.push_back(true);
                }
                for (int c = 0; c < kerB.cols(); ++c) {
                    Vec<K> full = Vec<K>::Zero(n);
                    for (int r = 0; r < m; ++r) full(idx[r]) = kerB(r, c);
                    cols.push_back(full);
                    is_im.push_back(false);
                }
            }
            if (int(cols.size()) != n) throw std::logic_error("decompose: basis size mismatch");
            // place image columns at the position of same-label summands
            // columns must be assigned to summand slots of matching label;
            // within a block any assignment works
            std::map<typename Cat::Label, std::vector<int>> freeslots;
            for (int i = 0; i < n; ++i) freeslots[t[i].lab].push_back(i);
            std::vector<int> colslot(n, -1);
            // im columns first within each block to make D a clean selector
            for (int pass = 0; pass < 2; ++pass)
                for (size_t ci = 0; ci < cols.size(); ++ci) {
                    if ((pass == 0) != bool(is_im[ci])) continue;
                    // label of this column: the label of its support block
                    typename Cat::Label lab{};
                    for (int r = 0; r < n; ++r)
                        if (!cols[ci](r).is_zero()) { lab = t[r].lab; break; }
                    auto& fs = freeslots[lab];
                    colslot[ci] = fs.front();
                    fs.erase(fs.begin());
                    if (is_im[ci]) {
                        keep[d].push_back(colslot[ci]);
                        sel.push_back(colslot[ci]);
                    }
                }
            for (size_t ci = 0; ci < cols.size(); ++ci) U.col(colslot[ci]) = cols[ci];
        }
        // entry-matrix version of U (scalar entries on same-label positions)
        EMat<K> Ue(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (t[r].lab == t[c].lab && !U(r, c).is_zero())
                    Ue.at(r, c) = cat.identity(t[r].lab) * U(r, c);
        EMat<K> Ueinv = detail::emat_inverse<K, Cat>(cat, t, Ue);
        // transport e by U: e' = U^{-1} e U  (scalar part becomes the selector)
        EMat<K> ep = emat_compose(cat, Ueinv, emat_compose(cat, e.comp.at(d), Ue));
        // D = selector on keep[d]
        EMat<K> D(n, n);
        for (int i : keep[d]) D.at(i, i) = cat.identity(t[i].lab);
        // g = e' D + (1 - e')(1 - D)
        EMat<K> I = detail::emat_identity<K, Cat>(cat, t);
        EMat<K> one_m_e = emat_add(I, ep, K(-1));
        EMat<K> one_m_D = emat_add(I, D, K(-1));
        EMat<K> g = emat_add(emat_compose(cat, ep, D), emat_compose(cat, one_m_e, one_m_D));
        EMat<K> ginv = detail::emat_inverse<K, Cat>(cat, t, g);
        // total conjugation at this degree: V = U g, V^{-1} = g^{-1} U^{-1}
        conj[d] = emat_compose(cat, Ue, g);
        conjinv[d] = emat_compose(cat, ginv, Ueinv);
        e.comp.at(d) = emat_compose(cat, ginv, ep);
        e.comp.at(d) = emat_compose(cat, e.comp.at(d), g);
    }
    // new differential: d' = V_{k+1}^{-1} d V_k
    for (int d = P.lo; d < P.hi(); ++d) {
        EMat<K> dm = diff_emat(P, d);
        EMat<K> nd = emat_compose(cat, conjinv.at(d + 1), emat_compose(cat, dm, conj.at(d)));
        int k = Q.index_of(d);
        for (auto& row : Q.diff[k]) row.clear();
        for (int r = 0; r < nd.rows; ++r)
            for (int c = 0; c < nd.cols; ++c)
                if (!nd.at(r, c).empty()) Q.dset(d, c, r, nd.at(r, c));
    }
    // split off keep-part and complement (no cross terms now)
    auto extract = [&](bool selected) {
        Cplx<K, Cat> R;
        R.cat = P.cat;
        R.lo = P.lo;
        R.terms.resize(P.terms.size());
        std::vector<std::vector<int>> remap(P.terms.size());
        for (int d = P.lo; d <= P.hi(); ++d) {
            std::set<int> ks(keep[d].begin(), keep[d].end());
            remap[Q.index_of(d)].assign(P.term(d).size(), -1);
            for (size_t s = 0; s < P.term(d).size(); ++s) {
                bool in = ks.count(int(s)) > 0;
                if (in == selected) {
                    remap[Q.index_of(d)][s] = int(R.terms[R.index_of(d)].size());
                    R.terms[R.index_of(d)].push_back(P.term(d)[s]);
                }
            }
        }
        R.init_diff();
        for (int d = P.lo; d < P.hi(); ++d) {
            int k = Q.index_of(d);
            for (size_t s = 0; s < Q.terms[k].size(); ++s) {
                if (remap[k][s] < 0) continue;
                for (auto& [t2, e2] : Q.diff[k][s]) {
                    if (remap[k + 1][t2] < 0) {
                        if (!e2.empty())
                            throw std::logic_error("decompose_complex: split leaked");
                        continue;
                    }
                    R.dset(d, remap[k][s], remap[k + 1][t2], e2);
                }
            }
        }
        minimize_complex(R);
        return R;
    };
    Cplx<K, Cat> keepC = extract(true);
    Cplx<K, Cat> restC = extract(false);
    auto l = decompose_complex(keepC, seed + 1);
    auto r = decompose_complex(restC, seed + 2);
    l.insert(l.end(), r.begin(), r.end());
    return l;
}

}  // namespace preproj
