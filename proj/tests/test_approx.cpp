#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dio/approx.hpp"

#include <cmath>

using namespace dio;

static Z binom(long n, long k) {
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

TEST_CASE("gamma tuples pinned cases") {
    GammaTupleSet s = gamma_tuples(Q(4), Q(3), 1);
    CHECK(s.lambda == Q(1, 3));
    CHECK(s.v == 7);
    CHECK(s.cardinality() == 8);

    // beta = 2*beta1 -> lambda = 1, v = t+2
    for (int t = 0; t <= 4; ++t) {
        GammaTupleSet d = gamma_tuples(Q(5), Q(5, 2), t);
        CHECK(d.v == t + 2);
        CHECK(d.cardinality() == binom(2 * t + 2, t));
    }

    GammaTupleSet one = gamma_tuples(Q(4), Q(3), 0);
    REQUIRE(one.tuples.size() == 1);
    CHECK(one.tuples[0] == std::vector<long>{one.v});

    CHECK_THROWS_AS(gamma_tuples(Q(3), Q(3), 1), std::invalid_argument);
    CHECK_THROWS_AS(gamma_tuples(Q(2), Q(3), 1), std::invalid_argument);
}

TEST_CASE("gamma tuples combinatorial invariants") {
    for (long bn : {3L, 4L, 6L}) {
        for (Q b1 : {Q(5, 2), Q(3)}) {
            if (!(Q(bn) > b1)) continue;
            for (int t = 0; t <= 6; ++t) {
                GammaTupleSet s = gamma_tuples(Q(bn), b1, t);
                CHECK(s.cardinality() == binom(s.v + t, t));
                for (const auto& tup : s.tuples) {
                    long sum = 0;
                    for (long f : tup) {
                        CHECK(f >= 0);
                        sum += f;
                    }
                    CHECK(sum == s.v);
                }
                // |S| <= 2^(v+t) <= 2^((beta/(beta-beta1))(t+1))
                double expo = (bn / (bn - b1.get_d())) * (t + 1);
                CHECK(Q(s.cardinality()).get_d() <= std::pow(2.0, s.v + t) + 0.5);
                CHECK(s.v + t <= expo + 1e-9);
                // no duplicate tuples
                auto sorted = s.tuples;
                std::sort(sorted.begin(), sorted.end());
                CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            }
        }
    }
}

TEST_CASE("real root isolation") {
    ZPoly f = ZPoly::from_int_list({-2, 0, 0, 1});  // x^3 - 2
    auto roots = real_roots_isolated(f);
    REQUIRE(roots.size() == 1);
    RealRootInterval r = roots[0];
    CHECK(eval(f, r.lo) * eval(f, r.hi) < 0);
    r.refine_below(Q(1, 1000000));
    double c = Q((r.lo + r.hi) / 2).get_d();
    CHECK(c == doctest::Approx(std::cbrt(2.0)).epsilon(1e-5));

    // exact rational roots collapse to points under refinement
    ZPoly g = ZPoly::from_int_list({-4, 0, 1});
    auto gr = real_roots_isolated(g);
    REQUIRE(gr.size() == 2);
    for (auto iv : gr) {
        iv.refine_below(Q(1, Z(1) << 60));
        CHECK(iv.is_point());
        CHECK(abs(iv.lo) == 2);
    }

    CHECK(real_roots_isolated(ZPoly::from_int_list({1, 0, 1})).empty());
}

static ApproxSystem arch_system(const Q& k, const Q& beta1) {
    ApproxSystem sys;
    sys.k = k;
    sys.beta1 = beta1;
    auto roots = real_roots_isolated(ZPoly::from_int_list({-2, 0, 0, 1}));
    PlaceRoot pr;
    pr.archimedean = true;
    pr.real = roots[0];
    sys.roots.push_back(pr);
    sys.gammas.push_back(Q(1));
    return sys;
}

TEST_CASE("check_system archimedean pinned") {
    // |2^(1/3) - 5/4| ~ 0.00992; 4^-3 = 0.015625? no: h = max(5,4) = 5, 5^-3 = 0.008
    SystemCheck c1 = check_system(arch_system(Q(1), Q(3)), Z(5), Z(4));
    CHECK(!c1.holds);
    SystemCheck c2 = check_system(arch_system(Q(1), Q(5, 2)), Z(5), Z(4));
    CHECK(c2.holds);
    CHECK(c2.places.size() == 1);
    CHECK(c2.places[0].log10_margin > 0);
    CHECK(c1.places[0].log10_margin < 0);
    CHECK_THROWS_AS(check_system(arch_system(Q(1), Q(3)), Z(2), Z(4)),
                    std::invalid_argument);  // gcd != 1
    CHECK_THROWS_AS(check_system(arch_system(Q(1), Q(3)), Z(1), Z(-1)),
                    std::invalid_argument);  // q <= 0
}

TEST_CASE("check_system p-adic and precision handling") {
    ZPoly f = ZPoly::from_int_list({-2, 0, 0, 1});
    PAdicRootsResult rr = padic_roots(f, Z(5), 3);
    REQUIRE(rr.roots.size() == 1);

    ApproxSystem sys;
    sys.k = Q(1);
    sys.beta1 = Q(2);
    PlaceRoot pr;
    pr.archimedean = false;
    pr.padic = rr.roots[0];
    sys.roots.push_back(pr);
    sys.gammas.push_back(Q(1));

    // |zeta - 3|_5 = 1/25 <= 3^-2 = 1/9
    CHECK(check_system(sys, Z(3), Z(1)).holds);
    sys.beta1 = Q(3);
    // 1/25 > 3^-3 = 1/27
    CHECK(!check_system(sys, Z(3), Z(1)).holds);

    // p = 53: distance known only as <= 5^-3 but rhs = 53^-3 is smaller
    CHECK_THROWS_AS(check_system(sys, Z(53), Z(1)), PrecisionError);
    // re-lift resolves it: true distance is 5^-3 > 53^-3
    sys.roots[0].padic = lift_root(f, rr.roots[0], 12);
    CHECK(!check_system(sys, Z(53), Z(1)).holds);

    // Gamma = 0 place is vacuous
    ApproxSystem two = sys;
    PlaceRoot arch;
    arch.archimedean = true;
    arch.real = real_roots_isolated(f)[0];
    two.roots.push_back(arch);
    two.gammas[0] = Q(0);
    two.gammas.push_back(Q(1));
    SystemCheck ck = check_system(two, Z(53), Z(1));
    CHECK(ck.places[0].holds);
}

TEST_CASE("reduction soundness on a small instance") {
    // any good-enough rational approximation satisfies the split system for
    // some Gamma tuple (here t+1 = 2 places: infinity and P=5)
    ZPoly f = ZPoly::from_int_list({-2, 0, 0, 1});
    auto arch = real_roots_isolated(f)[0];
    auto padr = padic_roots(f, Z(5), 24).roots[0];
    Q beta(3), beta1(5, 2);
    GammaTupleSet ts = gamma_tuples(beta, beta1, 1);
    // exhaustive over small coprime (p,q): whenever the product inequality
    // prod min(1,|.|_P) <= h^-beta holds with h >= k^(1/beta1), some tuple works
    for (long q = 1; q <= 30; ++q) {
        if (q % 5 == 0) continue;  // distance at P=5 needs the pole convention
        for (long p = -60; p <= 60; ++p) {
            Z zp(p), zq(q);
            Z g;
            mpz_gcd(g.get_mpz_t(), zp.get_mpz_t(), zq.get_mpz_t());
            if (g != 1) continue;
            long h = std::max(std::abs(p), q);
            if (h < 2) continue;
            double lhs = std::min(1.0, std::abs(std::cbrt(2.0) - double(p) / q));
            PAdicDistance d = padic_distance(padr, zp, zq);
            lhs *= d.value.get_d();
            if (lhs > std::pow(double(h), -beta.get_d()) * 0.99) continue;
            bool some = false;
            for (const auto& tup : ts.tuples) {
                ApproxSystem sys;
                sys.k = Q(1);
                sys.beta1 = beta1;
                PlaceRoot r1;
                r1.archimedean = true;
                r1.real = arch;
                PlaceRoot r2;
                r2.archimedean = false;
                r2.padic = padr;
                sys.roots = {r1, r2};
                sys.gammas = {Q(tup[0], ts.v), Q(tup[1], ts.v)};
                sys.gammas[0].canonicalize();
                sys.gammas[1].canonicalize();
                if (check_system(sys, zp, zq).holds) {
                    some = true;
                    break;
                }
            }
            CHECK(some);
        }
    }
}

TEST_CASE("gap threshold") {
    CHECK(gap_threshold(Q(1), Q(3), Z(10)) == 50);
    CHECK(gap_threshold(Q(1), Q(2), Z(100)) == 50);
    CHECK(gap_threshold(Q(2), Q(3), Z(4)) == 4);
    CHECK_THROWS_AS(gap_threshold(Q(8), Q(3), Z(2)), std::invalid_argument);
    // non-integer beta1: certified lower bound close below the true value
    Q t = gap_threshold(Q(1), Q(5, 2), Z(4));  // true value (1/2)*4^(3/2) = 4
    CHECK(t <= 4);
    CHECK(t.get_d() == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("thm15 formulas") {
    CHECK(thm15_count_bound(3, Q(4)) == doctest::Approx(2.79e10).epsilon(0.01));
    CHECK(thm15_count_bound(3, Q(5)) < thm15_count_bound(3, Q(4)));  // monotone in beta1
    CHECK_THROWS_AS(thm15_count_bound(3, Q(2)), std::invalid_argument);
    CHECK(thm15_height_floor(Q(1), Q(4), Z(2)) == doctest::Approx(8.0));
    CHECK_THROWS_AS(thm15_height_floor(Q(1), Q(2), Z(2)), std::invalid_argument);
}

TEST_CASE("solution classification") {
    CHECK(classify_solution(3, Z(1000), Z(4001), Z(1)) == SolutionClass::large);
    CHECK(classify_solution(3, Z(1000), Z(4000), Z(0)) == SolutionClass::large);
    CHECK(classify_solution(3, Z(1000), Z(50), Z(3)) == SolutionClass::medium);
    CHECK(classify_solution(3, Z(1000), Z(10), Z(3)) == SolutionClass::small);
    // partition: every h lands in exactly one class, monotone in h
    int prev = 0;
    for (long hh = 1; hh <= 5000; ++hh) {
        SolutionClass c = classify_solution(3, Z(1000), Z(hh), Z(0));
        int v = c == SolutionClass::small ? 0 : (c == SolutionClass::medium ? 1 : 2);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(classify_solution(2, Z(10), Z(1), Z(1)), std::invalid_argument);
    CHECK_THROWS_AS(classify_solution(3, Z(10), Z(0), Z(0)), std::invalid_argument);
}
