#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "preproj/linalg.hpp"

using namespace preproj;

TEST_CASE("Fp arithmetic") {
    Fp::set_modulus(32003);
    Fp a(5), b(32000);
    CHECK(a + b == Fp(2));
    CHECK(a * b == Fp(5LL * 32000));
    CHECK(a - b == Fp(5 - 32000));
    CHECK((a / b) * b == a);
    CHECK(Fp(0) - Fp(1) == Fp(32002));
    CHECK_THROWS(Fp(0).inv());
    Fp r;
    CHECK(Fp(4).sqrt(r));
    CHECK(r * r == Fp(4));
    // 32003 % 4 == 3: -1 is a non-residue
    CHECK_FALSE(Fp(-1).sqrt(r));
}

TEST_CASE("Rat arithmetic and overflow") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a / b == Rat(2));
    CHECK(a - a == Rat(0));
    CHECK((a * b) == Rat(1, 18));
    Rat huge(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(huge * huge, Rat::OverflowError);
}

TEST_CASE("rref, rank, nullspace, solve over Fp") {
    Fp::set_modulus(32003);
    Mat<Fp> m(3, 4);
    m << Fp(1), Fp(2), Fp(3), Fp(4),
         Fp(2), Fp(4), Fp(6), Fp(8),
         Fp(0), Fp(1), Fp(1), Fp(0);
    CHECK(rank_of<Fp>(m) == 2);
    Mat<Fp> ns = nullspace<Fp>(m);
    CHECK(ns.cols() == 2);
    for (int c = 0; c < ns.cols(); ++c) CHECK((m * ns.col(c)).isZero(0));

    Vec<Fp> b(3);
    b << Fp(10), Fp(20), Fp(1);
    auto x = solve<Fp>(m, b);
    REQUIRE(x.has_value());
    CHECK((m * *x - b).isZero(0));

    Vec<Fp> bad(3);
    bad << Fp(1), Fp(0), Fp(0);
    CHECK_FALSE(solve<Fp>(m, bad).has_value());
}

TEST_CASE("rref over Rat matches Fp behaviour") {
    Mat<Rat> m(2, 3);
    m << Rat(2), Rat(4), Rat(1),
         Rat(1), Rat(2), Rat(3);
    CHECK(rank_of<Rat>(m) == 2);
}

TEST_CASE("RowSpace incremental closure") {
    Fp::set_modulus(32003);
    RowSpace<Fp> rs(3);
    Vec<Fp> v1(3), v2(3), v3(3);
    v1 << Fp(1), Fp(1), Fp(0);
    v2 << Fp(0), Fp(1), Fp(1);
    v3 << Fp(1), Fp(2), Fp(1);
    CHECK(rs.add(v1));
    CHECK(rs.add(v2));
    CHECK_FALSE(rs.add(v3));  // dependent
    CHECK(rs.rank() == 2);
    CHECK(rs.contains(v3));
    RowSpace<Fp> rs2(3);
    rs2.add(v3);
    rs2.add(v2);
    CHECK(rs == rs2);  // same span, same canonical form... v3, v2 span the same plane
}

TEST_CASE("matrix inverse") {
    Fp::set_modulus(32003);
    Mat<Fp> m(2, 2);
    m << Fp(1), Fp(2), Fp(3), Fp(4);
    auto inv = inverse<Fp>(m);
    REQUIRE(inv.has_value());
    CHECK((m * *inv) == Mat<Fp>::Identity(2, 2));
    Mat<Fp> sing(2, 2);
    sing << Fp(1), Fp(2), Fp(2), Fp(4);
    CHECK_FALSE(inverse<Fp>(sing).has_value());
}

TEST_CASE("Rng determinism") {
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}
