#pragma once

#include "dio/forms.hpp"
#include "dio/intpoly.hpp"

#include <optional>
#include <vector>

namespace dio {

// A root of f in Z_P represented as a residue mod P^N. If pole_at_infinity is
// set, the residue approximates 1/zeta for a root zeta in Q_P \ Z_P (found on
// the reversed polynomial; residue ≡ 0 mod P).
struct PAdicRootApprox {
    Z prime;
    int precision;  // N >= 1
    Z residue;      // in [0, P^N)
    bool simple;    // f'(r) != 0 mod P  (f reversed in the pole case)
    bool pole_at_infinity = false;
};

struct PAdicRootsResult {
    std::vector<PAdicRootApprox> roots;
    // Singular branches abandoned at the depth cap, reported rather than
    // silently dropped. residue/precision describe the abandoned branch.
    std::vector<PAdicRootApprox> undecided;
};

// v_P(r); nullopt encodes the infinite valuation of 0.
std::optional<long> valuation(const Q& r, const Z& P);
long valuation(const Z& n, const Z& P);  // n != 0

// Roots of f in Z_P to precision N. Simple roots are Hensel-lifted; singular
// residues are branch-and-lifted with depth cap (default 4*(v_P(disc f)+1),
// at least N for squarefree f).
PAdicRootsResult padic_roots(const ZPoly& f, const Z& P, int N, int depth_cap = -1);

// As padic_roots, plus roots in Q_P \ Z_P via the reversed polynomial,
// flagged pole_at_infinity.
PAdicRootsResult padic_roots_with_poles(const ZPoly& f, const Z& P, int N,
                                        int depth_cap = -1);

struct PAdicDistance {
    Q value;     // min(1, |zeta - p/q|_P), a power of P (or 1)
    bool exact;  // false when only the upper bound P^-N is known
};

// min(1, |zeta - p/q|_P). Requires gcd(p,q)=1 and gcd(q,P)=1 unless the root
// carries the pole-at-infinity flag.
PAdicDistance padic_distance(const PAdicRootApprox& z, const Z& p, const Z& q);

// Re-lift a root approximation to higher precision (simple roots only lift
// uniquely; singular ones re-run the branch search).
PAdicRootApprox lift_root(const ZPoly& f, const PAdicRootApprox& z, int N);

// rho_F(m) = #{(i,j) in [0,m)^2 : F(i,j) ≡ 0 mod m}, exact, CRT over prime
// powers with fiberwise root counting (no m^2 enumeration).
Z rho(const BinaryForm& F, const Z& m);
Z rho_prime_power(const BinaryForm& F, const Z& P, int e);

// Count of primitive pairs (not both divisible by P) mod P^l with
// F ≡ 0 mod P^l. l >= 1.
Z primitive_solution_count(const BinaryForm& F, const Z& P, int l);

// m_{P,j}: Haar measure of {(x,y) in Z_P^2 : max(|x|,|y|)_P = 1,
// v_P(F(x,y)) = j}. Requires non-zero discriminant.
Q local_measure(const BinaryForm& F, const Z& P, int j);

struct LocalFactor {
    double value;          // sum_{j<=J} P^(2j/n) m_{P,j}
    double tail_bound;     // rigorous given the observed geometric decay
    bool tail_certified;   // decay check passed
    Q residual_mass;       // (1 - P^-2) - sum_{j<=J} m_{P,j}, exact
};

LocalFactor local_factor(const BinaryForm& F, const Z& P, int J);

}  // namespace dio
