#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "preproj/mutation.hpp"

using namespace preproj;

namespace {
struct Fix {
    DynkinGraph g;
    Algebra<Fp> A;
    RightCat<Fp> cat;
    MutationContext<Fp> ctx;
    Fix(Kind k, int n)
        : g(build_dynkin(k, n)), A(preprojective<Fp>(g)), cat(A), ctx(A, cat) {}
};
}  // namespace

TEST_CASE("A_2 irreducible left mutation shape") {
    Fp::set_modulus(32003);
    Fix f(Kind::A, 2);
    SiltNode<Fp> L = silt_start(f.ctx);
    SiltNode<Fp> mu = left_mutation(f.ctx, L, f.ctx.position_of(1));
    // replaced summand: e_1Λ in degree -1 mapping to e_2Λ
    const RightCplx<Fp>& Y = mu.summands[0];
    REQUIRE(Y.lo == -1);
    REQUIRE(Y.term(-1).size() == 1);
    REQUIRE(Y.term(0).size() == 1);
    CHECK(Y.term(-1)[0].lab == 1);
    CHECK(Y.term(0)[0].lab == 2);
    CHECK(Y.d_squared_zero());

    CHECK(is_silting(mu));
    CHECK_FALSE(is_tilting(mu));  // A_2 has iota(1) = 2 != 1

    // mutation back: μ^- after μ^+ is the identity up to iso
    SiltNode<Fp> back = right_mutation(f.ctx, mu, f.ctx.position_of(1));
    CHECK(complex_iso_minimal(node_sum(back), node_sum(L)));
}

TEST_CASE("A_2 composite mutation is tilting") {
    Fp::set_modulus(32003);
    Fix f(Kind::A, 2);
    SiltNode<Fp> L = silt_start(f.ctx);
    SiltNode<Fp> T = composite_mutation(f.ctx, L, 1, +1);
    CHECK(is_two_term(T));
    CHECK(is_tilting(T));
    SiltNode<Fp> back = composite_mutation(f.ctx, T, 1, -1);
    CHECK(complex_iso_minimal(node_sum(back), node_sum(L)));
    CHECK_THROWS(composite_mutation(f.ctx, L, 2, +1));  // 2 is not a folded vertex of A_2
}

TEST_CASE("two-term counts for A_2 and A_3 (Theorem 2.5)") {
    Fp::set_modulus(32003);
    {
        Fix f(Kind::A, 2);
        auto silt = enumerate_two_silt(f.ctx);
        CHECK(silt.nodes.size() == 6);
        CHECK(silt.edges.size() == 6);  // hexagon
        auto tilt = enumerate_two_tilt(f.ctx);
        CHECK(tilt.nodes.size() == 2);
        CHECK(tilt.edges.size() == 1);
        for (auto& n : silt.nodes) CHECK(is_silting(n));
        for (auto& n : tilt.nodes) CHECK(is_tilting(n));
    }
    {
        Fix f(Kind::A, 3);
        CHECK(enumerate_two_silt(f.ctx).nodes.size() == 24);
        auto tilt = enumerate_two_tilt(f.ctx);
        CHECK(tilt.nodes.size() == 8);
        CHECK(tilt.edges.size() == 8);  // octagon, B_2 pattern
    }
}

TEST_CASE("Theorem 2.5(a) at desk scale: w -> mutation complex is injective") {
    Fp::set_modulus(32003);
    for (auto [k, n] : {std::pair{Kind::A, 2}, {Kind::A, 3}}) {
        Fix f(k, n);
        WeylGroup W(f.g);
        std::set<std::vector<std::vector<long long>>> keys;
        size_t count = 0;
        for (const WeylElement& w : W.enumerate()) {
            auto word = W.reduced_word(w);
            SiltNode<Fp> node = silt_start(f.ctx);
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                node = left_mutation(f.ctx, node, f.ctx.position_of(*it));
            CHECK(is_two_term(node));
            keys.insert(g_key(node));
            ++count;
        }
        CHECK(keys.size() == count);  // injective
    }
}

TEST_CASE("composite mutation case table on A_3") {
    Fp::set_modulus(32003);
    Fix f(Kind::A, 3);
    SiltNode<Fp> L = silt_start(f.ctx);
    // iota(1) = 1: composite at 1 is the single irreducible mutation
    SiltNode<Fp> c1 = composite_mutation(f.ctx, L, 1, +1);
    SiltNode<Fp> m1 = left_mutation(f.ctx, L, f.ctx.position_of(1));
    CHECK(complex_iso_minimal(node_sum(c1), node_sum(m1)));
    // iota(2) = 3, no edge 2-3 in the zigzag labeling: composite = μ_2 μ_3
    SiltNode<Fp> c2 = composite_mutation(f.ctx, L, 2, +1);
    SiltNode<Fp> m23 = left_mutation(f.ctx, left_mutation(f.ctx, L, f.ctx.position_of(3)),
                                     f.ctx.position_of(2));
    CHECK(complex_iso_minimal(node_sum(c2), node_sum(m23)));
    CHECK(is_tilting(c2));
}

TEST_CASE("braid relations of mutation words") {
    Fp::set_modulus(32003);
    {
        // A_3 folds to B_2: the m = 4 relation
        Fix f(Kind::A, 3);
        BraidWord w1{{{1, 1}, {2, 1}, {1, 1}, {2, 1}}};
        BraidWord w2{{{2, 1}, {1, 1}, {2, 1}, {1, 1}}};
        SiltNode<Fp> n1 = mutate_word(f.ctx, w1);
        SiltNode<Fp> n2 = mutate_word(f.ctx, w2);
        RightCplx<Fp> s1 = node_sum(n1), s2 = node_sum(n2);
        minimize_complex(s1);
        minimize_complex(s2);
        CHECK(complex_iso_minimal(s1, s2));
        // and the two sides of the non-relation differ
        BraidWord w3{{{1, 1}, {2, 1}, {1, 1}}};
        SiltNode<Fp> n3 = mutate_word(f.ctx, w3);
        CHECK_FALSE(complex_iso_minimal(node_sum(n3), s1));
    }
    {
        // D_4: m = 3 relation
        Fix f(Kind::D, 4);
        BraidWord w1{{{1, 1}, {2, 1}, {1, 1}}};
        BraidWord w2{{{2, 1}, {1, 1}, {2, 1}}};
        RightCplx<Fp> s1 = node_sum(mutate_word(f.ctx, w1));
        RightCplx<Fp> s2 = node_sum(mutate_word(f.ctx, w2));
        minimize_complex(s1);
        minimize_complex(s2);
        CHECK(complex_iso_minimal(s1, s2));
    }
}

TEST_CASE("empty word gives the stalk; inverses cancel") {
    Fp::set_modulus(32003);
    Fix f(Kind::A, 3);
    SiltNode<Fp> e = mutate_word(f.ctx, BraidWord{});
    CHECK(complex_iso_minimal(node_sum(e), stalk_complex(f.cat)));
    BraidWord w{{{1, 1}, {2, 1}, {2, -1}, {1, -1}}};
    // freely reduced on input: reduce first
    SiltNode<Fp> n = mutate_word(f.ctx, braid_reduce(w));
    CHECK(complex_iso_minimal(node_sum(n), stalk_complex(f.cat)));
}

TEST_CASE("End invariants equal Λ's (Theorem 2.6(b)) at small scale") {
    Fp::set_modulus(32003);
    Fix f(Kind::A, 2);
    AlgebraInvariants lam = lambda_invariants(f.A);
    CHECK(lam.dim == 4);
    // all braid words of length <= 3 over B_1 (one generator)
    for (int len = 0; len <= 3; ++len) {
        for (int sgn : {+1, -1}) {
            BraidWord w;
            for (int i = 0; i < len; ++i) w.letters.push_back({1, sgn});
            SiltNode<Fp> n = mutate_word(f.ctx, w);
            AlgebraInvariants inv = end_invariants(n);
            CHECK(inv.dim == 4);
            CHECK(inv.matches(lam));
        }
    }

    Fix f3(Kind::A, 3);
    AlgebraInvariants lam3 = lambda_invariants(f3.A);
    SiltNode<Fp> t = composite_mutation(f3.ctx, silt_start(f3.ctx), 1, +1);
    AlgebraInvariants inv3 = end_invariants(t);
    CHECK(inv3.dim == 10);
    CHECK(inv3.matches(lam3));
}

TEST_CASE("complex JSON and DOT export") {
    Fp::set_modulus(32003);
    Fix f(Kind::A, 2);
    SiltNode<Fp> mu = left_mutation(f.ctx, silt_start(f.ctx), 0);
    auto j = complex_to_json(node_sum(mu));
    CHECK(j.contains("terms"));
    CHECK(j.contains("diff"));
    auto e = enumerate_two_silt(f.ctx);
    std::string dot = exchange_graph_dot(e);
    CHECK(dot.find("graph exchange") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 6);
}
