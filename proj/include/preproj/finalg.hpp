// Abstract finite-dimensional algebras by structure constants: radical via
// the trace form (valid here, char >> dim), semisimple-quotient splitting,
// primitive idempotent decomposition, Cartan matrix and radical layers.
// Powers module isomorphism testing and End-algebra invariants.
#pragma once

#include <functional>
#include <vector>

#include "preproj/linalg.hpp"

namespace preproj {

template <class K>
struct Poly {  // dense univariate polynomial, lowest degree first
    std::vector<K> c;
    int deg() const {
        for (int i = int(c.size()) - 1; i >= 0; --i)
            if (!c[i].is_zero()) return i;
        return -1;
    }
    void trim() { c.resize(size_t(std::max(deg() + 1, 1)), K(0)); }
    static Poly x() { return {{K(0), K(1)}}; }
    static Poly constant(K a) { return {{a}}; }
    bool is_zero() const { return deg() < 0; }
    K lead() const { return c[deg()]; }
    Poly monic() const {
        Poly r = *this;
        K inv = lead().inv();
        for (auto& a : r.c) a *= inv;
        return r;
    }
};

template <class K>
Poly<K> poly_mul(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return {{K(0)}};
    Poly<K> r;
    r.c.assign(a.deg() + b.deg() + 1, K(0));
    for (int i = 0; i <= a.deg(); ++i)
        for (int j = 0; j <= b.deg(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

template <class K>
Poly<K> poly_rem(Poly<K> a, const Poly<K>& b) {
    int db = b.deg();
    K lb = b.c[db].inv();
    while (a.deg() >= db) {
        int da = a.deg();
        K f = a.c[da] * lb;
        for (int i = 0; i <= db; ++i) a.c[da - db + i] -= f * b.c[i];
    }
    a.trim();
    return a;
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = poly_rem(a, b);
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

template <class K>
Poly<K> poly_derivative(const Poly<K>& a) {
    Poly<K> r;
    if (a.deg() < 1) return {{K(0)}};
    r.c.resize(a.deg());
    for (int i = 1; i <= a.deg(); ++i) r.c[i - 1] = a.c[i] * K(i);
    r.trim();
    return r;
}

template <class K>
Poly<K> poly_powmod(Poly<K> base, uint64_t e, const Poly<K>& mod) {
    Poly<K> r = Poly<K>::constant(K(1));
    base = poly_rem(base, mod);
    while (e) {
        if (e & 1) r = poly_rem(poly_mul(r, base), mod);
        base = poly_rem(poly_mul(base, base), mod);
        e >>= 1;
    }
    return r;
}

/// Quotient and remainder of a by b.
template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(Poly<K> a, const Poly<K>& b) {
    int db = b.deg();
    K lb = b.c[db].inv();
    Poly<K> q;
    q.c.assign(size_t(std::max(a.deg() - db + 1, 1)), K(0));
    while (a.deg() >= db) {
        int da = a.deg();
        K f = a.c[da] * lb;
        q.c[da - db] += f;
        for (int i = 0; i <= db; ++i) a.c[da - db + i] -= f * b.c[i];
        a.trim();
    }
    q.trim();
    return {q, a};
}

template <class K>
Poly<K> poly_sub(Poly<K> a, const Poly<K>& b) {
    a.c.resize(std::max(a.c.size(), b.c.size()), K(0));
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i] -= b.c[i];
    a.trim();
    return a;
}

/// Extended gcd: returns (g, u, v) with u a + v b = g, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_egcd(Poly<K> a, Poly<K> b) {
    Poly<K> u0 = Poly<K>::constant(K(1)), v0 = Poly<K>::constant(K(0));
    Poly<K> u1 = Poly<K>::constant(K(0)), v1 = Poly<K>::constant(K(1));
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = b;
        b = r;
        Poly<K> nu = poly_sub(u0, poly_mul(q, u1));
        Poly<K> nv = poly_sub(v0, poly_mul(q, v1));
        u0 = u1;
        v0 = v1;
        u1 = nu;
        v1 = nv;
    }
    if (!a.is_zero()) {
        K inv = a.lead().inv();
        for (auto& x : a.c) x *= inv;
        for (auto& x : u0.c) x *= inv;
        for (auto& x : v0.c) x *= inv;
    }
    return {a, u0, v0};
}

/// Finite-dimensional unital algebra presented by a bilinear multiplication.
template <class K>
struct FinAlgebra {
    int dim;
    std::function<Vec<K>(const Vec<K>&, const Vec<K>&)> mul;
    Vec<K> one;

    Vec<K> unit(int i) const {
        Vec<K> v = Vec<K>::Zero(dim);
        v(i) = K(1);
        return v;
    }
    Mat<K> lmul_matrix(const Vec<K>& x) const {
        Mat<K> m(dim, dim);
        for (int j = 0; j < dim; ++j) m.col(j) = mul(x, unit(j));
        return m;
    }
    Vec<K> power(Vec<K> x, uint64_t e) const {
        Vec<K> r = one;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    /// Jacobson radical as the kernel of the trace form tr(L_x L_y).
    /// Sound because the scalar characteristic far exceeds dim.
    Mat<K> radical_basis() const {
        std::vector<Mat<K>> L(dim);
        for (int i = 0; i < dim; ++i) L[i] = lmul_matrix(unit(i));
        Mat<K> form(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                K tr(0);
                Mat<K> prod = L[i] * L[j];
                for (int k = 0; k < dim; ++k) tr += prod(k, k);
                form(i, j) = tr;
            }
        return nullspace<K>(form);  // columns span rad
    }

    /// Minimal polynomial of x (via left multiplication when acting on the
    /// algebra itself; faithful since unital).
    Poly<K> min_poly(const Vec<K>& x) const {
        RowSpace<K> span(dim);
        std::vector<Vec<K>> powers;
        Vec<K> cur = one;
        while (true) {
            if (!span.add(cur)) {
                // solve for dependence: cur = sum c_i powers[i]
                Mat<K> m(dim, int(powers.size()));
                for (size_t i = 0; i < powers.size(); ++i) m.col(int(i)) = powers[i];
                auto sol = solve<K>(m, cur);
                Poly<K> p;
                p.c.assign(powers.size() + 1, K(0));
                for (size_t i = 0; i < powers.size(); ++i) p.c[i] = -(*sol)(int(i));
                p.c[powers.size()] = K(1);
                return p;
            }
            powers.push_back(cur);
            cur = mul(cur, x);
        }
    }
};

namespace detail {

/// Any nontrivial coprime split m = f g (monic, gcd(f,g)=1, both nonconstant),
/// or nullopt if m is a prime power. Fp only.
inline std::optional<std::pair<Poly<Fp>, Poly<Fp>>> coprime_split(const Poly<Fp>& m, Rng& rng) {
    int d = m.deg();
    if (d < 2) return std::nullopt;
    uint64_t p = Fp::modulus();
    Poly<Fp> s = poly_gcd(m, poly_derivative(m));
    Poly<Fp> sf = s.deg() >= 1 ? poly_divmod(m, s).first.monic() : m;  // squarefree part
    auto primary_part = [&](Poly<Fp> a) {
        // smallest factor A of m containing exactly a's irreducible factors
        Poly<Fp> A = poly_gcd(m, a);
        while (true) {
            Poly<Fp> A2 = poly_gcd(m, poly_mul(A, A));
            if (A2.deg() == A.deg()) return A;
            A = A2;
        }
    };
    auto finish = [&](const Poly<Fp>& f) -> std::optional<std::pair<Poly<Fp>, Poly<Fp>>> {
        Poly<Fp> A = primary_part(f);
        if (A.deg() < 1 || A.deg() >= m.deg()) return std::nullopt;
        return std::make_pair(A, poly_divmod(m, A).first.monic());
    };

    // distinct-degree pass on the squarefree part
    Poly<Fp> rest = sf;
    Poly<Fp> xp = Poly<Fp>::x();
    Poly<Fp> frob = xp;
    for (int k = 1; rest.deg() >= 1 && k <= rest.deg(); ++k) {
        frob = poly_powmod(frob, p, rest);
        Poly<Fp> diff = frob;
        diff.c.resize(std::max<size_t>(diff.c.size(), 2), Fp(0));
        diff.c[1] -= Fp(1);
        diff.trim();
        Poly<Fp> g = poly_gcd(rest, diff);
        if (g.deg() >= 1 && g.deg() < sf.deg()) return finish(g);
        if (g.deg() == sf.deg() && g.deg() > k) {
            // equal-degree: sf splits into deg/k irreducibles of degree k
            uint64_t exp = 1;
            for (int t = 0; t < k; ++t) exp *= p;
            exp = (exp - 1) / 2;
            for (int attempt = 0; attempt < 64; ++attempt) {
                Poly<Fp> rnd;
                rnd.c.resize(size_t(sf.deg()), Fp(0));
                for (auto& cc : rnd.c) cc = rng.scalar<Fp>();
                if (rnd.is_zero()) continue;
                Poly<Fp> t = poly_powmod(rnd, exp, sf);
                t.c.resize(std::max<size_t>(t.c.size(), 1), Fp(0));
                t.c[0] -= Fp(1);
                t.trim();
                Poly<Fp> h = poly_gcd(sf, t);
                if (h.deg() >= 1 && h.deg() < sf.deg()) return finish(h);
            }
            return std::nullopt;
        }
        if (g.deg() >= 1) {
            // all remaining factors have degree k but g == rest handled above
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// A nontrivial idempotent of the Fp-algebra, or nullopt when local.
/// Searches basis elements then seeded random elements for one whose minimal
/// polynomial splits coprimely; lifts the CRT idempotent through the radical.
inline std::optional<Vec<Fp>> nontrivial_idempotent(const FinAlgebra<Fp>& A, uint64_t seed = 11) {
    if (A.dim <= 1) return std::nullopt;
    Rng rng(seed);
    auto try_element = [&](const Vec<Fp>& x) -> std::optional<Vec<Fp>> {
        Poly<Fp> m = A.min_poly(x);
        Rng r2(seed ^ 0x5bd1e995);
        auto split = detail::coprime_split(m, r2);
        if (!split) return std::nullopt;
        auto [f, g] = *split;
        auto [gcd, u, v] = poly_egcd(f, g);
        if (gcd.deg() != 0) return std::nullopt;
        // e = (v g)(x) is idempotent mod nilpotents of the pair; Newton-lift
        Poly<Fp> vg = poly_mul(v, g);
        Vec<Fp> e = Vec<Fp>::Zero(A.dim);
        Vec<Fp> xp = A.one;
        for (int i = 0; i <= vg.deg(); ++i) {
            e += vg.c[i] * xp;
            xp = A.mul(xp, x);
        }
        for (int it = 0; it < 64; ++it) {
            Vec<Fp> e2 = A.mul(e, e);
            if (e2 == e) break;
            // e <- 3e^2 - 2e^3
            e = Fp(3) * e2 - Fp(2) * A.mul(e2, e);
        }
        if (A.mul(e, e) != e) return std::nullopt;
        if (e.isZero(0) || e == A.one) return std::nullopt;
        return e;
    };
    for (int i = 0; i < A.dim; ++i)
        if (auto r = try_element(A.unit(i))) return r;
    for (int t = 0; t < 200; ++t) {
        Vec<Fp> x(A.dim);
        for (int i = 0; i < A.dim; ++i) x(i) = rng.scalar<Fp>();
        if (auto r = try_element(x)) return r;
    }
    return std::nullopt;
}

/// Complete list of primitive orthogonal idempotents summing to 1.
inline std::vector<Vec<Fp>> primitive_idempotents(const FinAlgebra<Fp>& A, uint64_t seed = 11) {
    // peirce-decompose recursively: for idempotent f, work in fAf
    std::function<std::vector<Vec<Fp>>(const Vec<Fp>&)> rec =
        [&](const Vec<Fp>& f) -> std::vector<Vec<Fp>> {
        // the corner algebra fAf
        std::vector<Vec<Fp>> corner_basis;
        RowSpace<Fp> rs(A.dim);
        for (int i = 0; i < A.dim; ++i) {
            Vec<Fp> v = A.mul(A.mul(f, A.unit(i)), f);
            if (rs.add(v)) corner_basis.push_back(rs.rows().back());
        }
        // re-extract a clean basis (rows of rs)
        corner_basis.clear();
        for (const auto& row : rs.rows()) corner_basis.push_back(row);
        int d = int(corner_basis.size());
        Mat<Fp> B(A.dim, d);
        for (int i = 0; i < d; ++i) B.col(i) = corner_basis[i];
        auto to_corner = [&](const Vec<Fp>& v) {
            auto sol = solve<Fp>(B, v);
            if (!sol) throw std::logic_error("corner coordinates failed");
            return *sol;
        };
        FinAlgebra<Fp> C;
        C.dim = d;
        C.one = to_corner(f);
        C.mul = [&, B](const Vec<Fp>& x, const Vec<Fp>& y) {
            Vec<Fp> xa = B * x, ya = B * y;
            Vec<Fp> prod = A.mul(xa, ya);
            auto sol = solve<Fp>(B, prod);
            if (!sol) throw std::logic_error("corner not closed");
            return *sol;
        };
        auto e = nontrivial_idempotent(C, seed);
        if (!e) return {f};
        Vec<Fp> e_amb = B * *e;
        Vec<Fp> rest = f - e_amb;
        auto left = rec(e_amb);
        auto right = rec(rest);
        left.insert(left.end(), right.begin(), right.end());
        return left;
    };
    return rec(A.one);
}

/// Invariants compared by the End-rigidity checks: total dimension, Cartan
/// matrix over the primitive idempotents, and radical layer dimensions.
struct AlgebraInvariants {
    int dim;
    std::vector<std::vector<int>> cartan;
    std::vector<int> radical_layers;

    /// Equal up to simultaneous permutation of the idempotents.
    bool matches(const AlgebraInvariants& o) const {
        if (dim != o.dim || radical_layers != o.radical_layers) return false;
        if (cartan.size() != o.cartan.size()) return false;
        std::vector<int> perm(cartan.size());
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
        do {
            bool ok = true;
            for (size_t i = 0; i < perm.size() && ok; ++i)
                for (size_t j = 0; j < perm.size() && ok; ++j)
                    if (cartan[i][j] != o.cartan[perm[i]][perm[j]]) ok = false;
            if (ok) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }
};

inline AlgebraInvariants algebra_invariants(const FinAlgebra<Fp>& A, uint64_t seed = 11) {
    AlgebraInvariants out;
    out.dim = A.dim;
    std::vector<Vec<Fp>> idems = primitive_idempotents(A, seed);
    out.cartan.assign(idems.size(), std::vector<int>(idems.size(), 0));
    for (size_t r = 0; r < idems.size(); ++r)
        for (size_t s = 0; s < idems.size(); ++s) {
            RowSpace<Fp> rs(A.dim);
            for (int i = 0; i < A.dim; ++i)
                rs.add(A.mul(A.mul(idems[r], A.unit(i)), idems[s]));
            out.cartan[r][s] = rs.rank();
        }
    // dims of rad^k / rad^{k+1} until the power vanishes
    Mat<Fp> rad = A.radical_basis();
    std::vector<int> power_dims{A.dim};
    std::vector<Vec<Fp>> cur;
    for (int c = 0; c < rad.cols(); ++c) cur.push_back(rad.col(c));
    while (!cur.empty()) {
        RowSpace<Fp> canon(A.dim);
        for (const auto& v : cur) canon.add(v);
        if (canon.rank() == 0) break;
        power_dims.push_back(canon.rank());
        std::vector<Vec<Fp>> next;
        for (int c = 0; c < rad.cols(); ++c)
            for (const auto& row : canon.rows()) next.push_back(A.mul(rad.col(c), row));
        cur = std::move(next);
    }
    for (size_t k = 0; k + 1 < power_dims.size(); ++k)
        out.radical_layers.push_back(power_dims[k] - power_dims[k + 1]);
    out.radical_layers.push_back(power_dims.back());
    return out;
}

}  // namespace preproj
