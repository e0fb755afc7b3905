#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ppd/degrees.hpp"

using namespace ppd;
using namespace ppd::degrees;

TEST_CASE("repunit values") {
    CHECK(repunit(Nat(2), 3) == 7);
    CHECK(repunit(Nat(3), 5) == 121);
    for (u64 q = 2; q < 40; ++q) CHECK(repunit(Nat(q), 2) == q + 1);
    CHECK(repunit(Nat(10), 9) == Nat("111111111"));
    CHECK_THROWS_AS(repunit(Nat(1), 3), std::invalid_argument);
}

TEST_CASE("repunit is 1 mod q") {
    for (u64 q = 2; q <= 50; ++q)
        for (unsigned d = 2; d <= 9; ++d) CHECK(repunit(Nat(q), d) % q == 1);
}

TEST_CASE("degree_prime_power") {
    auto r33 = degree_prime_power(Nat(3), 3);
    REQUIRE(r33.has_value());
    CHECK(r33->p == 13);
    CHECK(r33->k == 1);

    CHECK_FALSE(degree_prime_power(Nat(2), 6).has_value());

    auto r82 = degree_prime_power(Nat(8), 2);
    REQUIRE(r82.has_value());
    CHECK(r82->p == 3);
    CHECK(r82->k == 2);

    auto r35 = degree_prime_power(Nat(3), 5);
    REQUIRE(r35.has_value());
    CHECK(r35->p == 11);
    CHECK(r35->k == 2);

    CHECK_THROWS_AS(degree_prime_power(Nat(6), 3), std::invalid_argument);
}

TEST_CASE("search_projective_primes small cases") {
    auto v = search_projective_primes(3, 1, Nat(10));
    REQUIRE(v.size() == 3);
    CHECK(v[0].q == 2);
    CHECK(v[0].n == 7);
    CHECK(v[1].q == 3);
    CHECK(v[1].n == 13);
    CHECK(v[2].q == 5);
    CHECK(v[2].n == 31);
    // q = 7 is excluded: 57 = 3 * 19

    // q = 3 is excluded (121 = 11^2 is not prime) but q = 2 gives the prime 31
    auto u = search_projective_primes(5, 1, Nat(3));
    REQUIRE(u.size() == 1);
    CHECK(u[0].q == 2);
    CHECK(u[0].n == 31);

    // d = 3, e = 3: q = r^3; q = 8 gives 73
    auto w = search_projective_primes(3, 3, Nat(10));
    REQUIRE(w.size() == 1);
    CHECK(w[0].q == 8);
    CHECK(w[0].r == 2);
    CHECK(w[0].n == 73);
}

TEST_CASE("search_projective_primes agrees with a direct loop") {
    auto v = search_projective_primes(3, 1, Nat(2000));
    std::set<u64> got;
    for (const auto& pd : v) got.insert(to_u64(pd.q));
    std::set<u64> expect;
    nt::for_primes(2, 2000, [&](u64 q) {
        if (nt::is_prime(Nat(q) * q + q + 1)) expect.insert(q);
    });
    CHECK(got == expect);
}

TEST_CASE("nl_restricted_search finds only the known solution") {
    auto v = nl_restricted_search(Nat(1000), 13, 10);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == NlSolution{Nat(3), Nat(11), 5, 2});

    CHECK(nl_restricted_search(Nat(2), 3, 2).empty());
}

TEST_CASE("nl_restricted_search_d2 companion") {
    auto v = nl_restricted_search_d2(Nat(1000), 10);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == NlSolution{Nat(8), Nat(3), 2, 2});
}

TEST_CASE("nl_general_search known solutions") {
    auto v = nl_general_search(Nat(100), 10, 10);
    REQUIRE(v.size() == 4);
    CHECK(v[0] == NlSolution{Nat(3), Nat(11), 5, 2});
    CHECK(v[1] == NlSolution{Nat(7), Nat(20), 4, 2});
    CHECK(v[2] == NlSolution{Nat(18), Nat(7), 3, 3});
    CHECK(v[3] == NlSolution{Nat(-19), Nat(7), 3, 3});

    CHECK(nl_general_search(Nat(2), 3, 2).empty());

    // every known solution whose parameters fit inside (20, 4, 3)
    auto w = nl_general_search(Nat(20), 4, 3);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == NlSolution{Nat(7), Nat(20), 4, 2});
    CHECK(w[1] == NlSolution{Nat(18), Nat(7), 3, 3});
    CHECK(w[2] == NlSolution{Nat(-19), Nat(7), 3, 3});
}

TEST_CASE("restricted solutions are general solutions with prime-power x and prime y") {
    auto gen = nl_general_search(Nat(100), 13, 10);
    auto res = nl_restricted_search(Nat(100), 13, 10);
    for (const auto& s : res) {
        CHECK(std::find(gen.begin(), gen.end(), s) != gen.end());
        CHECK(prime_power_base(s.x).has_value());
        CHECK(nt::is_prime(s.y));
    }
}

TEST_CASE("catalan_prime_search") {
    auto v = catalan_prime_search(Nat(1'000'000));
    REQUIRE(v.size() == 1);
    CHECK(v[0].first == nt::PrimePower{Nat(3), 2});
    CHECK(v[0].second == nt::PrimePower{Nat(2), 3});

    CHECK(catalan_prime_search(Nat(8)).empty());
}

TEST_CASE("catalan_prime_search to 1e9 against a brute-force double loop") {
    auto v = catalan_prime_search(Nat(1'000'000'000));
    // oracle: enumerate proper prime powers directly and scan all pairs
    std::vector<u64> pps;
    for (u64 p = 2; p * p <= 1'000'000'000ULL; ++p) {
        bool prime = p > 1;
        for (u64 t = 2; t * t <= p && prime; ++t)
            if (p % t == 0) prime = false;
        if (!prime) continue;
        u128 w = static_cast<u128>(p) * p;
        while (w <= 1'000'000'000ULL) {
            pps.push_back(static_cast<u64>(w));
            w *= p;
        }
    }
    std::set<u64> pp_set(pps.begin(), pps.end());
    unsigned hits = 0;
    for (u64 a : pp_set)
        if (pp_set.count(a + 1)) ++hits;
    CHECK(v.size() == hits);
    REQUIRE(v.size() == 1);
    CHECK(v[0].first.value() == 9);
    CHECK(v[0].second.value() == 8);
}

TEST_CASE("classify_psl2_degree") {
    auto m = classify_psl2_degree(Nat(7));
    CHECK(m.kind == Psl2DegreeClass::Kind::mersenne);
    CHECK(m.p == 2);
    CHECK(m.k == 3);

    auto f = classify_psl2_degree(Nat(4));
    CHECK(f.kind == Psl2DegreeClass::Kind::fermat_prime);
    CHECK(f.p == 5);

    auto n = classify_psl2_degree(Nat(8));
    CHECK(n.kind == Psl2DegreeClass::Kind::nine);
    CHECK(n.p == 3);
    CHECK(n.k == 2);

    CHECK(classify_psl2_degree(Nat(5)).kind == Psl2DegreeClass::Kind::not_prime_power);
    CHECK(classify_psl2_degree(Nat(9)).kind == Psl2DegreeClass::Kind::not_prime_power);
    CHECK(classify_psl2_degree(Nat(16)).kind == Psl2DegreeClass::Kind::fermat_prime);
    CHECK(classify_psl2_degree(Nat(32)).kind == Psl2DegreeClass::Kind::not_prime_power);
    CHECK(classify_psl2_degree(Nat(31)).kind == Psl2DegreeClass::Kind::mersenne);
    CHECK_THROWS_AS(classify_psl2_degree(Nat(6)), std::invalid_argument);
    CHECK_THROWS_AS(classify_psl2_degree(Nat(3)), std::invalid_argument);
}
