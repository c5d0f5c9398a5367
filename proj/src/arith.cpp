#include "dio/arith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dio {

bool is_probable_prime(const Z& m) {
    return mpz_probab_prime_p(m.get_mpz_t(), 30) > 0;
}

PrimeSet::PrimeSet(std::vector<Z> ps) : primes(std::move(ps)) {
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size(); ++i) {
        if (!is_probable_prime(primes[i]))
            throw std::invalid_argument("PrimeSet: " + primes[i].get_str() +
                                        " is not prime");
        if (i > 0 && primes[i] == primes[i - 1])
            throw std::invalid_argument("PrimeSet: duplicate prime");
    }
}

PrimeSet PrimeSet::from_int_list(const std::vector<long>& v) {
    std::vector<Z> ps;
    ps.reserve(v.size());
    for (long x : v) ps.emplace_back(x);
    return PrimeSet(std::move(ps));
}

Z PrimeSet::radical() const {
    Z r = 1;
    for (const auto& p : primes) r *= p;
    return r;
}

Z Factorization::reconstruct() const {
    Z r = sign;
    for (const auto& [p, e] : factors) {
        Z pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        r *= pe;
    }
    return r;
}

namespace {

constexpr unsigned long kTrialLimit = 1000000;

// Pollard rho (Brent variant). n odd composite, no factor below kTrialLimit.
Z pollard_rho(const Z& n) {
    Z c = 1;
    while (true) {
        Z x = 2, y = 2, d = 1;
        Z count = 0;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Z diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;  // cycle without factor; retry with new c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            if (++count > 100000000) break;
        }
        if (d > 1 && d < n) return d;
        c += 1;
    }
}

void factor_rec(const Z& n, std::map<Z, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Z d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

Factorization factorize(const Z& m) {
    if (m == 0) throw std::invalid_argument("factorize: m must be non-zero");
    Factorization out;
    out.sign = m < 0 ? -1 : 1;
    Z n = abs(m);
    std::map<Z, int> fac;
    for (unsigned long p = 2; p <= kTrialLimit && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                n /= static_cast<long>(p);
                ++e;
            }
            fac[Z(static_cast<long>(p))] = e;
        }
    }
    if (n > 1) {
        if (n <= Z(kTrialLimit) * Z(kTrialLimit) || is_probable_prime(n))
            fac[n] += 1;
        else
            factor_rec(n, fac);
    }
    for (auto& [p, e] : fac) out.factors.emplace_back(p, e);
    return out;
}

int omega(const Z& m) {
    if (m == 0) throw std::invalid_argument("omega: m must be non-zero");
    return static_cast<int>(factorize(m).factors.size());
}

Z gpf(const Z& m) {
    if (m == 0) throw std::invalid_argument("gpf: m must be non-zero");
    Factorization f = factorize(m);
    if (f.factors.empty()) return Z(1);  // gpf(+-1) = 1 by convention
    return f.factors.back().first;
}

bool is_smooth(const Z& m, const PrimeSet& S) {
    if (m == 0) throw std::invalid_argument("is_smooth: m must be non-zero");
    Z n = abs(m);
    for (const auto& p : S.primes) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
    }
    return n == 1;
}

bool is_kfree(const Z& m, int k) {
    if (m == 0) throw std::invalid_argument("is_kfree: m must be non-zero");
    if (k < 2) throw std::invalid_argument("is_kfree: k must be >= 2");
    for (const auto& [p, e] : factorize(m).factors)
        if (e >= k) return false;
    return true;
}

std::pair<Z, std::vector<int>> strip_smooth(const Z& m, const PrimeSet& S) {
    if (m == 0) throw std::invalid_argument("strip_smooth: m must be non-zero");
    Z n = abs(m);
    std::vector<int> z(S.primes.size(), 0);
    for (size_t i = 0; i < S.primes.size(); ++i) {
        while (mpz_divisible_p(n.get_mpz_t(), S.primes[i].get_mpz_t())) {
            n /= S.primes[i];
            ++z[i];
        }
    }
    return {n, z};
}

}  // namespace dio
