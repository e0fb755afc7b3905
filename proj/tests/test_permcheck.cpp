#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ppd/classify.hpp"
#include "ppd/permcheck.hpp"

using namespace ppd;
using namespace ppd::perm;

TEST_CASE("permutation basics") {
    Permutation id = Permutation::identity(5);
    CHECK(id.is_identity());
    CHECK(id.order() == 1);

    Permutation c({1, 2, 3, 4, 0});
    CHECK(c.order() == 5);
    CHECK(c.fixed_points() == 0);
    CHECK(c.then(c.inverse()).is_identity());
    CHECK(c.then(c)(0) == 2);

    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("finite fields: arithmetic closes and inverses certify") {
    for (auto [r, e] : std::vector<std::pair<u32, unsigned>>{{2, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
        GF f = GF::make(r, e);
        CHECK(f.q() == powi(Nat(r), e));
        for (u32 a = 0; a < f.q(); ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a) CHECK(f.mul(a, f.inv(a)) == 1);
            for (u32 b = 0; b < f.q(); ++b) {
                // commutativity spot check
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.add(a, b) == f.add(b, a));
            }
        }
        // multiplicative generator has full order
        u32 g = f.generator();
        u32 x = g;
        unsigned ord = 1;
        while (x != 1) {
            x = f.mul(x, g);
            ++ord;
        }
        CHECK(ord == f.q() - 1);
    }
    CHECK_THROWS_AS(GF::make(6, 1), std::invalid_argument);
}

TEST_CASE("projective actions have the expected degree and order") {
    auto psl27 = build_projective_action(2, Nat(7), Variant::psl);
    CHECK(psl27.degree() == 8);
    CHECK(psl27.order() == 168);
    CHECK(psl27.is_transitive());

    auto psl32 = build_projective_action(3, Nat(2), Variant::psl);
    CHECK(psl32.degree() == 7);
    CHECK(psl32.order() == 168);

    auto psl24 = build_projective_action(2, Nat(4), Variant::psl);
    CHECK(psl24.degree() == 5);
    CHECK(psl24.order() == 60);

    auto pgl27 = build_projective_action(2, Nat(7), Variant::pgl);
    CHECK(pgl27.order() == 336);

    // PGL_2(4) = PSL_2(4)
    auto pgl24 = build_projective_action(2, Nat(4), Variant::pgl);
    CHECK(pgl24.order() == 60);
}

TEST_CASE("constructed orders match the factored order formula") {
    for (auto [d, q] : std::vector<std::pair<unsigned, u64>>{
             {2, 4}, {2, 5}, {2, 7}, {2, 8}, {2, 9}, {2, 11}, {2, 13}, {2, 16}, {3, 2}, {3, 3}, {3, 4}}) {
        auto g = build_projective_action(d, Nat(q), Variant::psl);
        auto f = classify::psl_order(d, Nat(q));
        CHECK(Nat(g.order()) == f.n);
        CHECK(g.degree() == degrees::repunit(Nat(q), d));
        // orbit-stabiliser identity at every point
        for (Point pt = 0; pt < g.degree(); ++pt)
            CHECK(Nat(g.orbit(pt).size() * stabilizer_order(g, pt)) == Nat(g.order()));
    }
}

TEST_CASE("stabilizer orders") {
    auto psl27 = build_projective_action(2, Nat(7), Variant::psl);
    CHECK(stabilizer_order(psl27, 0) == 21);

    PermGroup trivial(6, {});
    CHECK(trivial.order() == 1);
    CHECK(stabilizer_order(trivial, 3) == 1);

    auto psl28 = build_projective_action(2, Nat(8), Variant::psl);
    CHECK(psl28.degree() == 9);
    CHECK(psl28.order() == 504);
    CHECK(stabilizer_order(psl28, 0) == 56);
}

TEST_CASE("sylow subgroups") {
    auto psl27 = build_projective_action(2, Nat(7), Variant::psl);
    auto s2 = sylow_subgroup(psl27, 2);
    CHECK(s2.order() == 8);
    CHECK(s2.is_transitive());

    auto psl28 = build_projective_action(2, Nat(8), Variant::psl);
    auto s3 = sylow_subgroup(psl28, 3);
    CHECK(s3.order() == 9);
    CHECK(s3.is_transitive());

    auto s5 = sylow_subgroup(psl27, 5);  // 5 does not divide 168
    CHECK(s5.order() == 1);

    auto s7 = sylow_subgroup(psl27, 7);
    CHECK(s7.order() == 7);

    // sylow order is the exact p-part in a richer example
    auto psl29 = build_projective_action(2, Nat(9), Variant::psl);  // order 360
    CHECK(sylow_subgroup(psl29, 2).order() == 8);
    CHECK(sylow_subgroup(psl29, 3).order() == 9);
    CHECK(sylow_subgroup(psl29, 5).order() == 5);
}

TEST_CASE("verify_p_complement on the classified instances") {
    auto psl27 = build_projective_action(2, Nat(7), Variant::psl);
    auto r27 = verify_p_complement(psl27, 2);
    CHECK(r27.all());

    auto psl32 = build_projective_action(3, Nat(2), Variant::psl);
    auto r32 = verify_p_complement(psl32, 7);
    CHECK(r32.all());

    auto psl24 = build_projective_action(2, Nat(4), Variant::psl);
    auto r24 = verify_p_complement(psl24, 5);
    CHECK(r24.all());

    auto psl28 = build_projective_action(2, Nat(8), Variant::psl);
    CHECK(verify_p_complement(psl28, 3).all());

    // negative control: degree 12 is not a prime power
    auto psl211 = build_projective_action(2, Nat(11), Variant::psl);
    CHECK(psl211.degree() == 12);
    CHECK(psl211.order() == 660);
    auto r211 = verify_p_complement(psl211, 2);
    CHECK(r211.is_transitive);
    CHECK_FALSE(r211.degree_is_power_of_p);
    CHECK_FALSE(r211.sylow_regular);
}

TEST_CASE("transitive prime-power degree makes the sylow transitive") {
    for (auto [d, q, p] : std::vector<std::tuple<unsigned, u64, u64>>{
             {2, 4, 5}, {2, 7, 2}, {2, 8, 3}, {3, 2, 7}, {3, 3, 13}}) {
        auto g = build_projective_action(d, Nat(q), Variant::psl);
        auto syl = sylow_subgroup(g, p);
        CHECK(syl.is_transitive());
        // equivalence: stabiliser p'-group <=> sylow order equals degree <=> regular
        u64 stab = stabilizer_order(g, 0);
        bool coprime = stab % p != 0;
        bool regular = syl.order() == g.degree() && syl.is_transitive();
        CHECK(coprime == regular);
    }
}

TEST_CASE("point-hyperplane action of PSL_3(2): two stabiliser classes") {
    auto both = build_point_hyperplane_action(3, Nat(2), Variant::psl);
    CHECK(both.degree() == 14);
    CHECK(both.order() == 168);
    CHECK_FALSE(both.is_transitive());
    CHECK(both.orbit(0).size() == 7);
    CHECK(both.orbit(7).size() == 7);

    auto h_point = stabilizer_elements(both, 0);
    auto h_plane = stabilizer_elements(both, 7);
    CHECK(h_point.size() == 24);
    CHECK(h_plane.size() == 24);

    // point stabilisers are mutually conjugate, plane ones too, but the two
    // kinds are not conjugate to each other
    auto h_point2 = stabilizer_elements(both, 3);
    CHECK(subgroups_conjugate(both, h_point, h_point2));
    CHECK_FALSE(subgroups_conjugate(both, h_point, h_plane));

    std::vector<std::vector<Permutation>> stabs;
    for (Point pt = 0; pt < 14; ++pt) stabs.push_back(stabilizer_elements(both, pt));
    CHECK(conjugacy_class_count(both, stabs) == 2);
}

TEST_CASE("regular subgroups: positive cases") {
    auto psl27 = build_projective_action(2, Nat(7), Variant::psl);
    auto r = find_regular_subgroup(psl27);
    REQUIRE(r.subgroup.has_value());
    CHECK(r.subgroup->order() == 8);
    CHECK(r.subgroup->is_transitive());

    auto psl28 = build_projective_action(2, Nat(8), Variant::psl);
    auto r9 = find_regular_subgroup(psl28);
    REQUIRE(r9.subgroup.has_value());
    CHECK(r9.subgroup->order() == 9);

    auto psl24 = build_projective_action(2, Nat(4), Variant::psl);
    auto r5 = find_regular_subgroup(psl24);
    REQUIRE(r5.subgroup.has_value());
    CHECK(r5.subgroup->order() == 5);
}

TEST_CASE("regular subgroups: certified negative controls") {
    auto psl25 = build_projective_action(2, Nat(5), Variant::psl);
    CHECK(psl25.degree() == 6);
    CHECK(psl25.order() == 60);
    auto r6 = find_regular_subgroup(psl25);
    CHECK_FALSE(r6.subgroup.has_value());
    CHECK(r6.exhaustive);

    auto psl213 = build_projective_action(2, Nat(13), Variant::psl);
    CHECK(psl213.degree() == 14);
    CHECK(psl213.order() == 1092);
    auto r14 = find_regular_subgroup(psl213);
    CHECK_FALSE(r14.subgroup.has_value());
    CHECK(r14.exhaustive);

    // q = 9 = 1 mod 4: involutions have fixed points, so no regular subgroup
    auto psl29 = build_projective_action(2, Nat(9), Variant::psl);
    auto r10 = find_regular_subgroup(psl29);
    CHECK_FALSE(r10.subgroup.has_value());
    CHECK(r10.exhaustive);
}

TEST_CASE("regular subgroups across the constructible instances") {
    // prime-power degrees: the Sylow subgroup acts regularly
    for (auto [d, q] : std::vector<std::pair<unsigned, u64>>{
             {2, 4}, {2, 7}, {2, 8}, {2, 16}, {3, 2}, {3, 3}}) {
        auto g = build_projective_action(d, Nat(q), Variant::psl);
        auto r = find_regular_subgroup(g);
        REQUIRE(r.subgroup.has_value());
        CHECK(r.subgroup->order() == g.degree());
        CHECK(r.subgroup->is_transitive());
    }

    // degree 12 = 2^2 * 3 is not a prime power, but every non-identity
    // element of an A_4 inside PSL_2(11) is fixed-point free
    auto psl211 = build_projective_action(2, Nat(11), Variant::psl);
    auto r12 = find_regular_subgroup(psl211);
    REQUIRE(r12.subgroup.has_value());
    CHECK(r12.subgroup->order() == 12);

    // degree 21: the projective Singer cycle lies in PGL_3(4) but not in
    // PSL_3(4), and PSL_3(4) has no regular subgroup at all
    auto psl34 = build_projective_action(3, Nat(4), Variant::psl);
    auto r21 = find_regular_subgroup(psl34);
    CHECK_FALSE(r21.subgroup.has_value());
    CHECK(r21.exhaustive);
    auto pgl34 = build_projective_action(3, Nat(4), Variant::pgl);
    CHECK(pgl34.order() == 60480);
    auto r21g = find_regular_subgroup(pgl34);
    REQUIRE(r21g.subgroup.has_value());
    CHECK(r21g.subgroup->order() == 21);
}

TEST_CASE("A2 action of S_8 on 16 points") {
    auto g = build_a2_action(8);
    CHECK(g.degree() == 16);
    CHECK(g.order() == 40320);
    CHECK(g.is_transitive());

    // the two natural halves form a block system
    std::vector<std::vector<Point>> halves(2);
    for (Point i = 0; i < 8; ++i) halves[0].push_back(i);
    for (Point i = 8; i < 16; ++i) halves[1].push_back(i);
    CHECK(is_block_system(g, halves));
    // a garbled partition is not
    std::vector<std::vector<Point>> bad(2);
    for (Point i = 0; i < 16; ++i) bad[i % 2].push_back(i);
    CHECK_FALSE(is_block_system(g, bad));

    // no 2-complement: the point stabiliser has even order
    auto rep = verify_p_complement(g, 2);
    CHECK(rep.is_transitive);
    CHECK(rep.degree_is_power_of_p);
    CHECK_FALSE(rep.stabilizer_coprime_to_p);
    CHECK_FALSE(rep.sylow_regular);

    // the full-cycle and reversal images generate a regular dihedral group
    std::vector<Point> cycle(8), reversal(8);
    for (unsigned i = 0; i < 8; ++i) {
        cycle[i] = static_cast<Point>((i + 1) % 8);
        reversal[i] = static_cast<Point>(7 - i);
    }
    Permutation a = a2_embed(cycle, 8);
    Permutation b = a2_embed(reversal, 8);
    CHECK(a.fixed_points() == 0);
    CHECK(b.fixed_points() == 0);
    CHECK(a.order() == 8);
    CHECK(b.order() == 2);
    // dihedral relation b a b = a^{-1}
    CHECK(b.then(a).then(b) == a.inverse());
    PermGroup dihedral(16, {a, b});
    CHECK(dihedral.order() == 16);
    CHECK(dihedral.is_transitive());

    // the generic search also finds one
    auto r = find_regular_subgroup(g);
    REQUIRE(r.subgroup.has_value());
    CHECK(r.subgroup->order() == 16);
    CHECK(r.subgroup->is_transitive());

    CHECK_THROWS_AS(build_a2_action(16), capacity_error);
    CHECK_THROWS_AS(build_a2_action(6), std::invalid_argument);
}

TEST_CASE("orbit-stabiliser identity on every constructed group and point") {
    std::vector<PermGroup> groups;
    groups.push_back(build_projective_action(2, Nat(5), Variant::psl));
    groups.push_back(build_projective_action(2, Nat(7), Variant::pgl));
    groups.push_back(build_projective_action(3, Nat(2), Variant::psl));
    groups.push_back(build_a2_action(8));
    groups.push_back(build_point_hyperplane_action(3, Nat(2), Variant::psl));
    for (const auto& g : groups)
        for (Point pt = 0; pt < g.degree(); ++pt)
            CHECK(g.orbit(pt).size() * stabilizer_order(g, pt) == g.order());
}

TEST_CASE("element cap raises capacity errors") {
    GroupOptions small;
    small.element_cap = 100;
    auto g = build_projective_action(2, Nat(7), Variant::psl, small);
    CHECK_THROWS_AS(g.elements(), capacity_error);
    CHECK_THROWS_AS(build_projective_action(2, Nat(10007), Variant::psl), capacity_error);
}
