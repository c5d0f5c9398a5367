#pragma once

#include "dio/arith.hpp"
#include "dio/forms.hpp"

#include <optional>
#include <vector>

namespace dio {

// Solutions sorted by (height, p, q). certified_complete is set only when the
// caller supplies a proven height bound that fits inside the search box;
// otherwise results are box-limited.
struct ThueResult {
    std::vector<std::pair<Z, Z>> solutions;
    Z box;
    bool certified_complete = false;
};

// All (p,q) with max(|p|,|q|) <= B and F(p,q) = m. m = 0 returns the zero
// locus (rational lines through the origin; just (0,0) for irreducible F).
ThueResult solve_thue(const BinaryForm& F, const Z& m, const Z& B,
                      int threads = 1,
                      const std::optional<Z>& certified_bound = std::nullopt);

struct TMSolution {
    Z p, q;
    Z value;             // |F(p,q)|, S-smooth
    std::vector<int> z;  // exponents aligned with S.primes
};

struct TMResult {
    std::vector<TMSolution> solutions;  // sorted by (height, p, q)
    Z box;
    bool certified_complete = false;
};

// All coprime (p,q) with max(|p|,|q|) <= B and |F(p,q)| a product of powers
// of the primes in S (1 included, 0 excluded).
TMResult solve_thue_mahler(const BinaryForm& F, const PrimeSet& S, const Z& B,
                           int threads = 1,
                           const std::optional<Z>& certified_bound = std::nullopt);

struct SUnitSolution {
    Q x, y;              // x + y = 1 (or a x + b y = 1 in the weighted case)
    std::vector<int> zx, zy;  // exponents of |x|, |y| over S.primes
};

bool operator==(const SUnitSolution& a, const SUnitSolution& b);

// All solutions of x + y = 1 in S-units with every |z_i| <= E, enumerated via
// coprime smooth triples A + B = C with the triple entries bounded by
// (max S)^E, expanded through the six-element symmetry orbit.
std::vector<SUnitSolution> solve_sunit(const PrimeSet& S, int E, int threads = 1);

// All solutions of a x + b y = 1 in S-units with |z_i| <= E, by direct
// enumeration of the 2(2E+1)^t candidates for x.
std::vector<SUnitSolution> solve_weighted_sunit(const Q& a, const Q& b,
                                                const PrimeSet& S, int E);

// A = a * p^5 with p >= 1 and a fifth-power-free; unique.
std::pair<Z, Z> fifth_power_decompose(const Z& A);

}  // namespace dio
