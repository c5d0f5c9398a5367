#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dio/padic.hpp"
#include "dio/solve.hpp"

#include <numeric>
#include <set>

using namespace dio;

static BinaryForm BF(std::vector<long> v) { return BinaryForm::from_int_list(v); }

// O(B^2) brute force oracle
static std::vector<std::pair<Z, Z>> thue_brute(const BinaryForm& F, long m, long B) {
    std::vector<std::pair<Z, Z>> out;
    for (long q = -B; q <= B; ++q)
        for (long p = -B; p <= B; ++p)
            if (eval(F, Z(p), Z(q)) == m) out.emplace_back(p, q);
    std::sort(out.begin(), out.end());
    return out;
}

TEST_CASE("solve_thue pinned solutions") {
    BinaryForm f = BF({1, 0, 0, -2});
    ThueResult r1 = solve_thue(f, Z(1), Z(1000));
    REQUIRE(r1.solutions.size() == 2);
    CHECK(r1.solutions[0] == std::pair<Z, Z>(Z(-1), Z(-1)));
    CHECK(r1.solutions[1] == std::pair<Z, Z>(Z(1), Z(0)));
    CHECK(!r1.certified_complete);

    ThueResult r2 = solve_thue(f, Z(-1), Z(1000));
    REQUIRE(r2.solutions.size() == 2);
    CHECK(r2.solutions[0] == std::pair<Z, Z>(Z(-1), Z(0)));
    CHECK(r2.solutions[1] == std::pair<Z, Z>(Z(1), Z(1)));

    CHECK(solve_thue(f, Z(5), Z(1000)).solutions.empty());  // mod 9 obstruction

    ThueResult r3 = solve_thue(f, Z(1), Z(1000), 1, Z(500));
    CHECK(r3.certified_complete);
}

TEST_CASE("solve_thue against brute oracle") {
    std::vector<BinaryForm> forms = {BF({1, 0, 0, -2}), BF({1, 1, -1, 1}),
                                     BF({2, 0, 0, 3}), BF({1, 0, -1, 0, 1})};
    for (const auto& f : forms) {
        for (long m : {1L, -1L, 2L, 6L, -7L, 24L}) {
            CAPTURE(to_string(f));
            CAPTURE(m);
            ThueResult r = solve_thue(f, Z(m), Z(200));
            auto expect = thue_brute(f, m, 200);
            auto got = r.solutions;
            std::sort(got.begin(), got.end());
            CHECK(got == expect);
        }
    }
}

TEST_CASE("solve_thue zero locus") {
    CHECK(solve_thue(BF({1, 0, 0, -2}), Z(0), Z(100)).solutions ==
          std::vector<std::pair<Z, Z>>{{Z(0), Z(0)}});
    // XY(X+Y): three rational lines
    ThueResult r = solve_thue(BF({0, 1, 1, 0}), Z(0), Z(10));
    CHECK(r.solutions.size() == 61);  // origin + 3 lines * 20 points
    for (const auto& [p, q] : r.solutions) CHECK(eval(BF({0, 1, 1, 0}), p, q) == 0);
}

TEST_CASE("solve_thue determinism across thread counts") {
    BinaryForm f = BF({1, 1, -1, 1});
    ThueResult a = solve_thue(f, Z(1), Z(400), 1);
    ThueResult b = solve_thue(f, Z(1), Z(400), 4);
    ThueResult c = solve_thue(f, Z(1), Z(400), 16);
    CHECK(a.solutions == b.solutions);
    CHECK(a.solutions == c.solutions);
}

TEST_CASE("solve_thue_mahler pinned membership") {
    BinaryForm f = BF({1, 0, 0, -2});
    TMResult r = solve_thue_mahler(f, PrimeSet::from_int_list({2, 3}), Z(100));
    auto has = [&](long p, long q) {
        for (const auto& s : r.solutions)
            if (s.p == p && s.q == q) return true;
        return false;
    };
    CHECK(has(1, 1));    // 1
    CHECK(has(1, -1));   // 3
    CHECK(has(2, 1));    // 6
    CHECK(has(5, 4));    // 3
    CHECK(has(0, 1));    // 2
    CHECK(!has(3, 1));   // 25, not {2,3}-smooth
    // round-trip: every solution is coprime, smooth, non-zero
    PrimeSet S = PrimeSet::from_int_list({2, 3});
    for (const auto& s : r.solutions) {
        Z g;
        mpz_gcd(g.get_mpz_t(), s.p.get_mpz_t(), s.q.get_mpz_t());
        CHECK(g == 1);
        Z v = eval(f, s.p, s.q);
        CHECK(v != 0);
        CHECK(is_smooth(v, S));
        CHECK(abs(v) == s.value);
        Z rec = 1;
        for (size_t i = 0; i < s.z.size(); ++i) {
            Z pe;
            mpz_pow_ui(pe.get_mpz_t(), S.primes[i].get_mpz_t(), s.z[i]);
            rec *= pe;
        }
        CHECK(rec == s.value);
    }
    // paper bound (vastly larger than any desk count)
    CHECK(Z(static_cast<long>(r.solutions.size())) <= 2 * Z(300000) * Z(300000));
}

TEST_CASE("solve_thue_mahler S=empty reduces to |F|=1") {
    BinaryForm f = BF({1, 0, 0, -2});
    TMResult r = solve_thue_mahler(f, PrimeSet{}, Z(100));
    REQUIRE(r.solutions.size() == 4);  // (±1,0),(1,1),(−1,−1)
    for (const auto& s : r.solutions) CHECK(s.value == 1);
}

TEST_CASE("solve_thue_mahler transports under unimodular maps") {
    BinaryForm f = BF({1, 0, 0, -2});
    UnimodularMap M{1, 1, 0, 1};  // (p,q) -> used on the form side
    BinaryForm g = apply_map(f, M);
    PrimeSet S = PrimeSet::from_int_list({2, 3});
    TMResult rf = solve_thue_mahler(f, S, Z(60));
    TMResult rg = solve_thue_mahler(g, S, Z(25));
    // G(p,q) = F(p+q, q): each G-solution maps to an F-solution of equal value
    for (const auto& s : rg.solutions) {
        Z P = s.p + s.q, Q0 = s.q;
        CHECK(abs(eval(f, P, Q0)) == s.value);
        bool found = false;
        for (const auto& t : rf.solutions)
            if (t.p == P && t.q == Q0) found = true;
        CHECK(found);
    }
}

TEST_CASE("solve_sunit S={2}") {
    auto sols = solve_sunit(PrimeSet::from_int_list({2}), 10);
    REQUIRE(sols.size() == 3);
    std::set<std::pair<Q, Q>> got;
    for (const auto& s : sols) got.insert({s.x, s.y});
    CHECK(got.count({Q(1, 2), Q(1, 2)}));
    CHECK(got.count({Q(2), Q(-1)}));
    CHECK(got.count({Q(-1), Q(2)}));
    CHECK(solve_sunit(PrimeSet{}, 10).empty());
}

TEST_CASE("solve_sunit S={2,3} matches oracle and is symmetric") {
    PrimeSet S = PrimeSet::from_int_list({2, 3});
    auto sols = solve_sunit(S, 20);
    CHECK(sols.size() == 21);  // orbits of 1+1=2, 1+2=3, 1+3=4, 1+8=9
    // independent oracle through the weighted solver
    auto oracle = solve_weighted_sunit(Q(1), Q(1), S, 20);
    REQUIRE(sols.size() == oracle.size());
    for (size_t i = 0; i < sols.size(); ++i) {
        CHECK(sols[i].x == oracle[i].x);
        CHECK(sols[i].y == oracle[i].y);
        CHECK(sols[i].x + sols[i].y == 1);
    }
    // Evertse-style cap
    CHECK(sols.size() <= 5764801);  // 7^(2t+4) = 7^8
    // symmetry closure: (x,y) -> (y,x) and (1/x, -y/x)
    std::set<std::pair<Q, Q>> got;
    for (const auto& s : sols) got.insert({s.x, s.y});
    for (const auto& s : sols) {
        CHECK(got.count({s.y, s.x}));
        Q ix = 1 / s.x, iy = -s.y / s.x;
        ix.canonicalize();
        iy.canonicalize();
        bool within = true;
        for (const auto& P : S.primes) {
            auto v = valuation(ix, P);
            auto w = valuation(iy, P);
            if (std::abs(*v) > 20 || std::abs(*w) > 20) within = false;
        }
        if (within) CHECK(got.count({ix, iy}));
    }
}

TEST_CASE("solve_sunit determinism across threads") {
    PrimeSet S = PrimeSet::from_int_list({2, 3, 5});
    auto a = solve_sunit(S, 8, 1);
    auto b = solve_sunit(S, 8, 4);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    // exhaustive oracle
    auto oracle = solve_weighted_sunit(Q(1), Q(1), S, 8);
    CHECK(a.size() == oracle.size());
}

TEST_CASE("solve_weighted_sunit") {
    PrimeSet S23 = PrimeSet::from_int_list({2, 3});
    auto w = solve_weighted_sunit(Q(2), Q(3), S23, 10);
    bool has21 = false;
    for (const auto& s : w) {
        CHECK(Q(2) * s.x + Q(3) * s.y == 1);
        if (s.x == 2 && s.y == -1) has21 = true;
    }
    CHECK(has21);

    // x - y = 1 over S={2}
    auto d = solve_weighted_sunit(Q(1), Q(-1), PrimeSet::from_int_list({2}), 5);
    std::set<std::pair<Q, Q>> got;
    for (const auto& s : d) got.insert({s.x, s.y});
    CHECK(got == std::set<std::pair<Q, Q>>{
                     {Q(-1), Q(-2)}, {Q(1, 2), Q(-1, 2)}, {Q(2), Q(1)}});

    CHECK_THROWS_AS(solve_weighted_sunit(Q(0), Q(1), S23, 5), std::invalid_argument);
}

TEST_CASE("fifth power decomposition") {
    CHECK(fifth_power_decompose(Z(64)) == std::pair<Z, Z>(Z(2), Z(2)));
    CHECK(fifth_power_decompose(Z(-96)) == std::pair<Z, Z>(Z(-3), Z(2)));
    CHECK(fifth_power_decompose(Z(7)) == std::pair<Z, Z>(Z(7), Z(1)));
    CHECK(fifth_power_decompose(Z(1)) == std::pair<Z, Z>(Z(1), Z(1)));
    CHECK(fifth_power_decompose(Z(-1)) == std::pair<Z, Z>(Z(-1), Z(1)));
    for (long A : {32L, 97L, -2048L, 7776L, 123454321L}) {
        auto [a, p] = fifth_power_decompose(Z(A));
        Z p5;
        mpz_pow_ui(p5.get_mpz_t(), p.get_mpz_t(), 5);
        CHECK(a * p5 == A);
        CHECK(p >= 1);
        CHECK(is_kfree(a, 5));
    }
    CHECK_THROWS_AS(fifth_power_decompose(Z(0)), std::invalid_argument);
}
