#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace dio {

using Z = mpz_class;

// Sorted set of distinct primes P1 < ... < Pt.
struct PrimeSet {
    std::vector<Z> primes;

    PrimeSet() = default;
    explicit PrimeSet(std::vector<Z> ps);  // validates primality and sorts
    static PrimeSet from_int_list(const std::vector<long>& v);

    int t() const { return static_cast<int>(primes.size()); }
    bool empty() const { return primes.empty(); }
    Z radical() const;  // product of the primes (1 if empty)
};

struct Factorization {
    int sign;                              // +-1
    std::vector<std::pair<Z, int>> factors;  // primes strictly increasing, exp >= 1

    Z reconstruct() const;
};

// Exact factorization; trial division to 1e6 then Pollard rho with
// probabilistic primality certification of cofactors. m != 0.
Factorization factorize(const Z& m);

int omega(const Z& m);   // number of distinct prime divisors; omega(+-1) = 0
Z gpf(const Z& m);       // greatest prime factor; gpf(+-1) = 1

bool is_smooth(const Z& m, const PrimeSet& S);  // |m| has no prime outside S
bool is_kfree(const Z& m, int k);               // no prime power P^k divides m

// Removes all factors of the primes in S from |m|; returns (stripped value >= 1,
// exponents z_i aligned with S.primes).
std::pair<Z, std::vector<int>> strip_smooth(const Z& m, const PrimeSet& S);

bool is_probable_prime(const Z& m);

}  // namespace dio
