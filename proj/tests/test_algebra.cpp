#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "preproj/algebra.hpp"

using namespace preproj;

namespace {

// Independent brute-force oracle: enumerate raw paths of the double quiver
// length by length and subtract the rank of the span of all p * r_v * q.
// Deliberately separate from the production rewrite-map construction.
struct PathOracle {
    struct Path {
        int src;
        std::vector<int> word;
        int tgt;
        bool operator<(const Path& o) const {
            return std::tie(src, word) < std::tie(o.src, o.word);
        }
    };
    const DynkinGraph& g;
    std::vector<Arrow> arrows;
    std::vector<std::vector<Path>> paths;

    PathOracle(const DynkinGraph& graph, int max_len) : g(graph) {
        arrows = detail::orient_arrows(g);
        paths.resize(max_len + 1);
        for (int v : g.vertices) paths[0].push_back({v, {}, v});
        for (int L = 1; L <= max_len; ++L)
            for (const Path& p : paths[L - 1])
                for (const Arrow& a : arrows)
                    if (p.tgt == a.src)
                        paths[L].push_back({p.src, [&] {
                                                auto w = p.word;
                                                w.push_back(a.id);
                                                return w;
                                            }(),
                                            a.tgt});
    }

    int dim_at(int L) const {
        if (L <= 1) return int(paths[L].size());
        std::map<Path, int> index;
        for (const Path& p : paths[L]) index[p] = int(index.size());
        std::vector<Vec<Fp>> rel;
        for (int i = 0; i + 2 <= L; ++i) {
            for (const Path& p : paths[i]) {
                int v = p.tgt;
                for (const Path& q : paths[L - i - 2]) {
                    if (q.src != v) continue;
                    Vec<Fp> row = Vec<Fp>::Zero(int(index.size()));
                    for (const Arrow& a : arrows) {
                        if (a.src != v) continue;
                        Fp eps = a.star ? Fp(-1) : Fp(1);
                        Path full{p.src, p.word, q.tgt};
                        full.word.push_back(a.id);
                        full.word.push_back(a.pair);
                        full.word.insert(full.word.end(), q.word.begin(), q.word.end());
                        auto it = index.find(full);
                        REQUIRE(it != index.end());
                        row(it->second) += eps;
                    }
                    if (!row.isZero(0)) rel.push_back(row);
                }
            }
        }
        Mat<Fp> m(int(rel.size()), int(index.size()));
        for (size_t r = 0; r < rel.size(); ++r) m.row(int(r)) = rel[r].transpose();
        return int(index.size()) - rank_of<Fp>(m);
    }
};

int coxeter_number(const DynkinGraph& g) {
    if (g.kind == Kind::A) return g.rank + 1;
    if (g.kind == Kind::D) return 2 * g.rank - 2;
    if (g.kind == Kind::E) return g.rank == 6 ? 12 : (g.rank == 7 ? 18 : 30);
    throw std::logic_error("h");
}

}  // namespace

TEST_CASE("preprojective dimensions against the brute-force oracle") {
    Fp::set_modulus(32003);
    for (auto [kind, rank] : {std::pair{Kind::A, 2}, {Kind::A, 3}, {Kind::D, 4}}) {
        DynkinGraph g = build_dynkin(kind, rank);
        Algebra<Fp> A = preprojective<Fp>(g);
        int h = coxeter_number(g);
        PathOracle oracle(g, h);
        auto graded = A.graded_dims();
        int total = 0;
        for (int L = 0; L <= h; ++L) {
            int expect = oracle.dim_at(L);
            int got = L < int(graded.size()) ? graded[L] : 0;
            CHECK(got == expect);
            total += expect;
        }
        CHECK(A.dim() == total);
        // classical closed form n*h*(h+1)/6
        CHECK(A.dim() == g.rank * h * (h + 1) / 6);
        CHECK(A.loewy_length() == h - 1);
    }
}

TEST_CASE("frozen dimensions") {
    Fp::set_modulus(32003);
    CHECK(preprojective<Fp>(build_dynkin(Kind::A, 2)).dim() == 4);
    CHECK(preprojective<Fp>(build_dynkin(Kind::A, 3)).dim() == 10);
    CHECK(preprojective<Fp>(build_dynkin(Kind::A, 4)).dim() == 20);
    CHECK(preprojective<Fp>(build_dynkin(Kind::D, 4)).dim() == 28);
    CHECK(preprojective<Fp>(build_dynkin(Kind::D, 5)).dim() == 60);
    CHECK_THROWS(preprojective<Fp>(build_dynkin(Kind::B, 2)));
}

TEST_CASE("A_2 multiplication table by hand") {
    Fp::set_modulus(32003);
    Algebra<Fp> A = preprojective<Fp>(build_dynkin(Kind::A, 2));
    REQUIRE(A.dim() == 4);
    Vec<Fp> a = A.arrow_elem(A.arrow_by_name("a1").id);
    Vec<Fp> b = A.arrow_elem(A.arrow_by_name("b1").id);
    CHECK(A.mul(a, b).isZero(0));
    CHECK(A.mul(b, a).isZero(0));
    CHECK(A.mul(A.idempotent(1), a) == a);
    CHECK(A.mul(a, A.idempotent(2)) == a);
    CHECK(A.mul(a, A.idempotent(1)).isZero(0));
    CHECK(A.mul(A.one(), b) == b);
}

TEST_CASE("associativity") {
    Fp::set_modulus(32003);
    for (auto g : {build_dynkin(Kind::A, 2), build_dynkin(Kind::A, 3)}) {
        Algebra<Fp> A = preprojective<Fp>(g);
        for (int i = 0; i < A.dim(); ++i)
            for (int j = 0; j < A.dim(); ++j)
                for (int k = 0; k < A.dim(); ++k) {
                    Vec<Fp> x = A.unit_basis(i), y = A.unit_basis(j), z = A.unit_basis(k);
                    CHECK(A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z)));
                }
    }
    // sampled for D_4
    Algebra<Fp> D = preprojective<Fp>(build_dynkin(Kind::D, 4));
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        int i = int(rng.below(D.dim())), j = int(rng.below(D.dim())), k = int(rng.below(D.dim()));
        Vec<Fp> x = D.unit_basis(i), y = D.unit_basis(j), z = D.unit_basis(k);
        CHECK(D.mul(D.mul(x, y), z) == D.mul(x, D.mul(y, z)));
    }
}

TEST_CASE("rationals fallback gives the same dimensions") {
    CHECK(preprojective<Rat>(build_dynkin(Kind::A, 2)).dim() == 4);
    CHECK(preprojective<Rat>(build_dynkin(Kind::A, 3)).dim() == 10);
    CHECK(preprojective<Rat>(build_dynkin(Kind::D, 4)).dim() == 28);
}

TEST_CASE("selfinjectivity and the Nakayama permutation") {
    Fp::set_modulus(32003);
    for (auto [kind, rank] : {std::pair{Kind::A, 2}, {Kind::A, 3}, {Kind::A, 4},
                              {Kind::D, 4}, {Kind::D, 5}}) {
        Algebra<Fp> A = preprojective<Fp>(build_dynkin(kind, rank));
        auto [ok, perm] = selfinjectivity_check(A);
        CHECK(ok);
    }
    Algebra<Fp> A2 = preprojective<Fp>(build_dynkin(Kind::A, 2));
    auto [ok2, p2] = selfinjectivity_check(A2);
    CHECK(p2(1) == 2);
    CHECK(p2(2) == 1);
    Algebra<Fp> D4 = preprojective<Fp>(build_dynkin(Kind::D, 4));
    CHECK(selfinjectivity_check(D4).second.is_identity());
}

TEST_CASE("component dimension symmetry dim e_iΛe_j = dim e_ι(j)Λe_ι(i)") {
    Fp::set_modulus(32003);
    for (auto [kind, rank] : {std::pair{Kind::A, 3}, {Kind::A, 4}, {Kind::D, 4}, {Kind::D, 5}}) {
        DynkinGraph g = build_dynkin(kind, rank);
        Algebra<Fp> A = preprojective<Fp>(g);
        NakayamaPerm iota = nakayama_perm(g);
        for (int i : g.vertices)
            for (int j : g.vertices)
                CHECK(A.component(i, j).size() == A.component(iota(j), iota(i)).size());
    }
}

TEST_CASE("type D projective dimensions match (P_1) and Lemma 5.3 counts") {
    Fp::set_modulus(32003);
    for (int m : {4, 5, 6}) {  // D_m, the paper's D_{n+1} with n = m-1
        int n = m - 1;
        DynkinGraph g = build_dynkin(Kind::D, m);
        Algebra<Fp> A = preprojective<Fp>(g);
        int leg1 = 1, leg2 = m;  // the paper's vertices 1 and -1
        auto row_dim = [&](int v) {
            int d = 0;
            for (int j : g.vertices) d += int(A.component(v, j).size());
            return d;
        };
        CHECK(row_dim(leg1) == n * (n + 1) / 2);
        CHECK(row_dim(leg2) == n * (n + 1) / 2);
        // Lemma 5.3(b): e_2 Λ e_{±1} has n-1 basis elements
        CHECK(A.component(2, leg1).size() == size_t(n - 1));
        CHECK(A.component(2, leg2).size() == size_t(n - 1));
        // Lemma 5.3(a): e_i Λ e_{i-1}, 3 <= i <= n, has 2(n-i+1)
        for (int i = 3; i <= n; ++i)
            CHECK(A.component(i, i - 1).size() == size_t(2 * (n - i + 1)));
        // Lemma 5.3(c): e_i Λ e_{i+1}, 2 <= i <= n-1, has 2(n-i)
        for (int i = 2; i <= n - 1; ++i)
            CHECK(A.component(i, i + 1).size() == size_t(2 * (n - i)));
    }
}

TEST_CASE("truncated affine algebras") {
    Fp::set_modulus(32003);
    DynkinGraph a2 = build_dynkin(Kind::A, 2);
    Algebra<Fp> t1 = truncated_affine<Fp>(a2, 1);
    CHECK(t1.dim() == 3);  // K x K x K

    Algebra<Fp> t4 = truncated_affine<Fp>(a2, 4);
    Algebra<Fp> t5 = truncated_affine<Fp>(a2, 5);
    CHECK(t5.dim() > t4.dim());

    Algebra<Fp> lambda = preprojective<Fp>(a2);
    Mat<Fp> s = affine_surjection(t4, lambda);
    CHECK(rank_of<Fp>(s) == lambda.dim());           // surjective
    CHECK(s.col(t4.idempotent_index(0)).isZero(0));  // kernel contains e_0
    // algebra map on all basis pairs
    for (int i = 0; i < t4.dim(); ++i)
        for (int j = 0; j < t4.dim(); ++j) {
            Vec<Fp> lhs = s * t4.mul(t4.unit_basis(i), t4.unit_basis(j));
            Vec<Fp> rhs = lambda.mul(s.col(i), s.col(j));
            CHECK(lhs == rhs);
        }
    CHECK_THROWS(truncated_affine<Fp>(a2, 50, RelationSigns::Standard, 100));
}

TEST_CASE("affine graded dimensions grow linearly for A_2~") {
    Fp::set_modulus(32003);
    Algebra<Fp> t = truncated_affine<Fp>(build_dynkin(Kind::A, 2), 8);
    auto d = t.graded_dims();
    REQUIRE(int(d.size()) == 8);
    for (int L = 0; L < 8; ++L) CHECK(d[L] == 3 * (L + 1));
}

TEST_CASE("Nakayama automorphism") {
    Fp::set_modulus(32003);
    for (auto [kind, rank] : {std::pair{Kind::A, 2}, {Kind::A, 3}, {Kind::D, 4}, {Kind::D, 5}}) {
        DynkinGraph g = build_dynkin(kind, rank);
        Algebra<Fp> A = preprojective<Fp>(g);
        AutMap<Fp> nu = nakayama_automorphism(A);
        NakayamaPerm iota = nakayama_perm(g);
        for (int v : g.vertices)
            CHECK(nu.idem_images[A.vertex_index(v)] == A.idempotent(iota(v)));
    }
}

TEST_CASE("validate_aut accepts the A_2 flip and rejects junk") {
    Fp::set_modulus(32003);
    Algebra<Fp> A = preprojective<Fp>(build_dynkin(Kind::A, 2));
    Vec<Fp> a = A.arrow_elem(A.arrow_by_name("a1").id);
    Vec<Fp> b = A.arrow_elem(A.arrow_by_name("b1").id);
    // e_1 <-> e_2, a <-> b: the graph flip
    AutMap<Fp> flip = validate_aut<Fp>(A, {A.idempotent(2), A.idempotent(1)}, {b, a});
    CHECK(flip.matrix * a == b);

    // a -> a + b is not vertex-homogeneous
    CHECK_THROWS(validate_aut<Fp>(A, {A.idempotent(1), A.idempotent(2)}, {a + b, b}));
    // identity images are valid
    AutMap<Fp> id = validate_aut<Fp>(A, {A.idempotent(1), A.idempotent(2)}, {a, b});
    CHECK(id.matrix == Mat<Fp>::Identity(4, 4));
    // inner automorphisms validate
    Vec<Fp> u = A.one() + a;
    AutMap<Fp> inn = inner_aut(A, u);
    CHECK(is_invertible(inn.matrix));
}

TEST_CASE("algebra JSON dump shape") {
    Fp::set_modulus(32003);
    Algebra<Fp> A = preprojective<Fp>(build_dynkin(Kind::A, 2));
    auto j = algebra_to_json(A);
    CHECK(j["basis"].size() == 4);
    CHECK(j["field"]["p"] == 32003);
}
