#pragma once

#include "dio/intpoly.hpp"
#include "dio/padic.hpp"

#include <stdexcept>
#include <vector>

namespace dio {

// Raised when a comparison cannot be certified at the available precision
// (p-adic residue too short, or a real-root interval that will not separate).
// Callers re-lift / re-isolate and retry; we never guess.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All exponent vectors (f_P) with f_P >= 0 and sum f_P = v over t+1 places,
// where lambda = beta/beta1 - 1 and v = 1 + floor((t+1)/lambda).
struct GammaTupleSet {
    Q beta, beta1, lambda;
    int t;   // number of places minus one
    long v;  // common denominator of the Gamma_P = f_P / v
    std::vector<std::vector<long>> tuples;  // colexicographic order

    Z cardinality() const { return Z(static_cast<long>(tuples.size())); }
};

GammaTupleSet gamma_tuples(const Q& beta, const Q& beta1, int t);

// A real algebraic number as a sign-change interval [lo, hi] for a squarefree
// polynomial; refine() bisects exactly in rational arithmetic.
struct RealRootInterval {
    ZPoly f;  // squarefree, f(lo) and f(hi) of opposite sign (or lo == hi)
    Q lo, hi;

    bool is_point() const { return lo == hi; }
    Q width() const { return hi - lo; }
    void refine();
    void refine_below(const Q& target_width);
};

// All real roots of f as exact isolating intervals (located numerically,
// certified by sign change on the squarefree part).
std::vector<RealRootInterval> real_roots_isolated(const ZPoly& f);

struct PlaceRoot {
    bool archimedean;
    RealRootInterval real;  // valid when archimedean
    PAdicRootApprox padic;  // valid otherwise
};

// The simultaneous approximation system: at every place,
// min(1, |zeta_P - p/q|_P) <= (k * h^-beta1)^Gamma_P with h = max(|p|,|q|).
struct ApproxSystem {
    Q k;      // >= 1
    Q beta1;  // > 0
    std::vector<PlaceRoot> roots;
    std::vector<Q> gammas;  // same length, Gamma_P >= 0, sum = 1
};

struct PlaceReport {
    Q gamma;
    bool holds;
    double log10_margin;  // log10(rhs) - log10(lhs); positive = satisfied
};

struct SystemCheck {
    bool holds;
    std::vector<PlaceReport> places;
};

// Exact verification of the system at (p,q); gcd(p,q)=1, q>0.
SystemCheck check_system(const ApproxSystem& sys, const Z& p, const Z& q);

// (1/(2k)) * h1^(beta1-1), the minimum height of a second solution.
// Exact when beta1 is an integer; otherwise a certified rational lower bound.
// Requires h1 > k^(1/beta1).
Q gap_threshold(const Q& k, const Q& beta1, const Z& h1);

// 2^30 * delta^-3 * log(3n) * log(delta^-1 log(3n)), delta = 1 - 2/beta1 > 0.
double thm15_count_bound(int n, const Q& beta1);
// (4k)^(2/(beta1-2)) * H
double thm15_height_floor(const Q& k, const Q& beta1, const Z& H);

enum class SolutionClass { small, medium, large };

// Mahler's height partition at level Z: large when h^(n-2) >= 4Z, medium when
// h^(n-1) >= Z, small otherwise; h = max(|p|,|q|), (p,q) != (0,0), n >= 3.
SolutionClass classify_solution(int n, const Z& Zbound, const Z& p, const Z& q);

}  // namespace dio
