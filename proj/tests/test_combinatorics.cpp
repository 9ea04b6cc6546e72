#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "preproj/dynkin.hpp"
#include "preproj/weyl.hpp"

using namespace preproj;

TEST_CASE("Figure-1 labelings") {
    DynkinGraph a3 = build_dynkin(Kind::A, 3);
    CHECK(a3.vertices == std::vector<int>{1, 2, 3});
    CHECK(a3.adjacent(2, 1));
    CHECK(a3.adjacent(1, 3));
    CHECK_FALSE(a3.adjacent(2, 3));

    DynkinGraph d4 = build_dynkin(Kind::D, 4);
    CHECK(d4.adjacent(1, 2));
    CHECK(d4.adjacent(4, 2));
    CHECK(d4.adjacent(2, 3));
    CHECK(d4.edges.size() == 3);

    DynkinGraph b2 = build_dynkin(Kind::B, 2);
    CHECK(b2.edges.size() == 1);
    CHECK(b2.edge_label(1, 2) == 4);

    DynkinGraph f4 = build_dynkin(Kind::F, 4);
    CHECK(f4.edge_label(2, 3) == 4);
    CHECK(f4.edge_label(1, 2) == 3);

    CHECK_THROWS(build_dynkin(Kind::D, 3));
    CHECK_THROWS(build_dynkin(Kind::E, 9));
    CHECK_THROWS(build_dynkin(Kind::F, 5));
    CHECK_THROWS(build_dynkin(Kind::ExtA, 1));
}

TEST_CASE("extended graphs add one vertex labeled 0") {
    DynkinGraph ea2 = build_dynkin(Kind::ExtA, 2);
    CHECK(ea2.vertices == std::vector<int>{0, 1, 2});
    CHECK(ea2.adjacent(0, 1));
    CHECK(ea2.adjacent(0, 2));
    CHECK(ea2.adjacent(1, 2));  // triangle

    DynkinGraph ed4 = extended_of(build_dynkin(Kind::D, 4));
    CHECK(ed4.adjacent(0, 2));  // affine node on the branch vertex
    CHECK(ed4.neighbors(2) == std::vector<int>({0, 1, 3, 4}));

    DynkinGraph ed5 = extended_of(build_dynkin(Kind::D, 5));
    CHECK(ed5.adjacent(0, 3));
}

TEST_CASE("Nakayama permutation case table") {
    auto perm = [](Kind k, int n) { return nakayama_perm(build_dynkin(k, n)); };
    NakayamaPerm a3 = perm(Kind::A, 3);
    CHECK(a3(1) == 1);
    CHECK(a3(2) == 3);
    CHECK(a3(3) == 2);
    NakayamaPerm a2 = perm(Kind::A, 2);
    CHECK(a2(1) == 2);
    CHECK(a2(2) == 1);
    CHECK(perm(Kind::D, 4).is_identity());
    NakayamaPerm d5 = perm(Kind::D, 5);
    CHECK(d5(1) == 5);
    CHECK(d5(5) == 1);
    CHECK(d5(3) == 3);
    NakayamaPerm e6 = perm(Kind::E, 6);
    CHECK(e6(3) == 5);
    CHECK(e6(4) == 6);
    CHECK(e6(1) == 1);
    CHECK(perm(Kind::E, 7).is_identity());
    CHECK(perm(Kind::E, 8).is_identity());
    CHECK_THROWS(nakayama_perm(build_dynkin(Kind::B, 2)));

    // involution on every A/D/E graph of rank <= 6
    for (auto [k, lo, hi] : {std::tuple{Kind::A, 1, 6}, {Kind::D, 4, 6}, {Kind::E, 6, 6}}) {
        for (int n = lo; n <= hi; ++n) {
            DynkinGraph g = build_dynkin(k, n);
            NakayamaPerm iota = nakayama_perm(g);
            for (int v : g.vertices) CHECK(iota(iota(v)) == v);
        }
    }
}

TEST_CASE("folding table") {
    CHECK(fold(build_dynkin(Kind::A, 3)).name() == "B2");
    CHECK(fold(build_dynkin(Kind::A, 4)).name() == "B2");
    CHECK(fold(build_dynkin(Kind::A, 2)).name() == "B1");
    CHECK(fold(build_dynkin(Kind::D, 4)).name() == "D4");
    CHECK(fold(build_dynkin(Kind::D, 5)).name() == "B4");
    CHECK(fold(build_dynkin(Kind::D, 6)).name() == "D6");
    CHECK(fold(build_dynkin(Kind::E, 6)).name() == "F4");
    CHECK(fold(build_dynkin(Kind::E, 7)).name() == "E7");
    CHECK(folded_vertices(build_dynkin(Kind::A, 3)) == std::vector<int>{1, 2});
    CHECK(folded_vertices(build_dynkin(Kind::D, 4)) == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("Weyl group orders and lengths") {
    WeylGroup w(build_dynkin(Kind::A, 3));
    auto all = w.enumerate();
    CHECK(all.size() == 24);
    CHECK(w.length(w.longest_element()) == 6);

    WeylGroup b2(build_dynkin(Kind::B, 2));
    CHECK(b2.enumerate().size() == 8);
    CHECK(b2.length(b2.longest_element()) == 4);

    WeylGroup d4(build_dynkin(Kind::D, 4));
    CHECK(d4.group_order() == 192);
    CHECK(d4.enumerate().size() == 192);

    CHECK_THROWS(WeylGroup(build_dynkin(Kind::E, 8)).enumerate());
}

TEST_CASE("reduced words multiply back and have the right length") {
    for (auto g : {build_dynkin(Kind::A, 3), build_dynkin(Kind::B, 2), build_dynkin(Kind::D, 4)}) {
        WeylGroup w(g);
        for (const WeylElement& x : w.enumerate()) {
            auto word = w.reduced_word(x);
            CHECK(int(word.size()) == w.length(x));
            CHECK(w.product(word) == x);
        }
    }
}

TEST_CASE("length equals BFS distance at rank <= 4") {
    for (auto g : {build_dynkin(Kind::A, 4), build_dynkin(Kind::D, 4), build_dynkin(Kind::B, 3)}) {
        WeylGroup w(g);
        // BFS from identity
        std::map<WeylElement, int> dist;
        std::vector<WeylElement> frontier{w.identity()};
        dist[w.identity()] = 0;
        while (!frontier.empty()) {
            std::vector<WeylElement> next;
            for (auto& x : frontier)
                for (int v : g.vertices) {
                    WeylElement y = w.multiply(x, w.simple(v));
                    if (!dist.count(y)) {
                        dist[y] = dist[x] + 1;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
        for (auto& [x, d] : dist) CHECK(w.length(x) == d);
    }
}

TEST_CASE("iota action and fixed subgroup") {
    WeylGroup w(build_dynkin(Kind::A, 3));
    CHECK(w.is_iota_fixed(w.simple(1)));
    CHECK(w.iota_action(w.simple(2)) == w.simple(3));
    CHECK_FALSE(w.is_iota_fixed(w.simple(2)));

    int fixed = 0;
    for (const WeylElement& x : w.enumerate())
        if (w.is_iota_fixed(x)) ++fixed;
    CHECK(fixed == 8);  // |W(B_2)|

    // w_0 w w_0 = iota(w)
    WeylElement w0 = w.longest_element();
    for (const WeylElement& x : w.enumerate())
        CHECK(w.multiply(w.multiply(w0, x), w0) == w.iota_action(x));
}

TEST_CASE("t generators per Eq. (T)") {
    WeylGroup a3(build_dynkin(Kind::A, 3));
    CHECK(a3.t_generator(1).second == std::vector<int>{1});
    CHECK(a3.t_generator(2).second == std::vector<int>{2, 3});
    WeylGroup a2(build_dynkin(Kind::A, 2));
    CHECK(a2.t_generator(1).second == std::vector<int>{1, 2, 1});
    CHECK_THROWS(a3.t_generator(3));
}

TEST_CASE("Theorem 3.1: <t_i> = iota-fixed subgroup with folded Coxeter matrix") {
    for (auto g : {build_dynkin(Kind::A, 2), build_dynkin(Kind::A, 3), build_dynkin(Kind::A, 4),
                   build_dynkin(Kind::A, 5), build_dynkin(Kind::D, 4), build_dynkin(Kind::D, 5)}) {
        WeylGroup w(g);
        DynkinGraph folded = fold(g);
        std::vector<int> reps = folded_vertices(g);
        REQUIRE(int(reps.size()) == folded.rank);

        // subgroup generated by the t_i
        std::vector<WeylElement> gens;
        for (int i : reps) gens.push_back(w.t_generator(i).first);
        std::map<WeylElement, bool> seen;
        std::vector<WeylElement> frontier{w.identity()};
        seen[w.identity()] = true;
        size_t count = 0;
        while (!frontier.empty()) {
            std::vector<WeylElement> next;
            for (auto& x : frontier) {
                ++count;
                for (auto& t : gens) {
                    WeylElement y = w.multiply(x, t);
                    if (!seen.count(y)) {
                        seen[y] = true;
                        next.push_back(y);
                    }
                }
            }
            frontier = std::move(next);
        }
        size_t fixed = 0;
        for (const WeylElement& x : w.enumerate())
            if (w.is_iota_fixed(x)) ++fixed;
        CHECK(count == fixed);

        // pairwise orders realize the folded Coxeter matrix (folded labels = orbit reps)
        for (size_t a = 0; a < reps.size(); ++a)
            for (size_t b = 0; b < reps.size(); ++b) {
                int m = w.order_of(w.multiply(gens[a], gens[b]));
                int viaFold = folded.coxeter_m(folded.vertices[a], folded.vertices[b]);
                CHECK(m == viaFold);
            }
    }
}

TEST_CASE("braid words reduce freely") {
    BraidWord w{{{1, 1}, {1, -1}, {2, 1}}};
    CHECK(braid_reduce(w).letters == std::vector<BraidLetter>{{2, 1}});
    CHECK(braid_reduce(BraidWord{}).letters.empty());
    BraidWord v{{{1, 1}, {2, 1}, {2, -1}, {1, 1}}};
    CHECK(braid_reduce(v).letters == std::vector<BraidLetter>{{1, 1}, {1, 1}});
    CHECK(braid_reduce(braid_concat(v, braid_inverse(v))).letters.empty());
}

TEST_CASE("graph JSON round shape") {
    auto j = to_json(build_dynkin(Kind::B, 2));
    CHECK(j["kind"] == "B");
    CHECK(j["rank"] == 2);
    CHECK(j["edges"][0]["m"] == 4);
}
