#pragma once

#include "dio/arith.hpp"
#include "dio/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dio {

// Box policy: the core box is the large-solution threshold ceil((4Z)^{1/(n-2)});
// the scan extends to margin*core and anything found outside the core box is
// reported in margin_hits rather than silently mixed in. count covers the core
// box only.
struct CountResult {
    Z count;
    Z core_box;
    Z scan_box;
    Z margin_hits;
};

// #{(p,q): prod_{P in S u {oo}} |F(p,q)|_P <= Z, gcd(p,q,rad S)=1}. For S empty
// this is #{|F(p,q)| <= Z} including F=0 pairs.
CountResult count_A(const BinaryForm& F, const PrimeSet& S, const Z& Zbound,
                    int threads = 1, int margin = 2);

// Distinct non-zero represented values h = F(p,q), |h| <= Z (k-free variant).
CountResult count_R(const BinaryForm& F, const Z& Zbound, int threads = 1,
                    int margin = 2);
CountResult count_Rk(const BinaryForm& F, int k, const Z& Zbound,
                     int threads = 1, int margin = 2);

// #{(p,q): 1 <= |F(p,q)| <= Z, F(p,q) k-free}. Errors out when some prime P
// has P^k dividing every value of F (checked via rho over small primes).
CountResult count_Nk(const BinaryForm& F, int k, const Z& Zbound,
                     int threads = 1, int margin = 2);

struct AreaEstimate {
    double value;
    double radius;       // rigorous for quadrature, 99% CI for monte-carlo
    std::string method;  // "quadrature" | "monte-carlo"
    uint64_t seed = 0;
};

// sigma_F = area{(x,y): |F(x,y)| <= 1} by certified adaptive interval
// quadrature on the boundary-parametrized radial form of the integral. If tol
// is unattainable within the cell budget the achieved radius is returned.
AreaEstimate sigma_archimedean(const BinaryForm& F, double tol = 1e-3,
                               long max_cells = 4000000);

// Monte-Carlo cross-check with analytic singularity subtraction; radius is a
// 99% confidence half-width. Deterministic at any thread count (per-block
// seeding).
AreaEstimate sigma_monte_carlo(const BinaryForm& F, long samples,
                               uint64_t seed, int threads = 1);

// sigma_{F,S} = sigma_F * prod_{P in S} s_P with local factors truncated at J.
AreaEstimate sigma_S(const BinaryForm& F, const PrimeSet& S, int J = 8,
                     double tol = 1e-3);

struct EulerProduct {
    double value;        // partial product over P <= Pmax (and P | D(F))
    double tail_bound;   // value - tail_bound <= lambda <= value; NaN if unvalidated
    bool tail_validated;
};

// lambda_{F,k} = prod_P (1 - rho_F(P^k)/P^{2k}), k >= 2. The tail over
// P > Pmax coprime to D(F) uses rho_F(P^k) <= n P^k + P^{2k-2}, giving a
// relative tail at most (n+1)/Pmax; the bound is validated against exact rho
// for P <= 100 before being trusted.
EulerProduct lambda_k(const BinaryForm& F, int k, long Pmax = 10000);

struct CountSeriesEntry {
    Z Zvalue;
    CountResult result;
    double normalized;  // count / Z^{2/n}
};

struct CountSeries {
    std::vector<CountSeriesEntry> entries;
    double reference;         // sigma_{F,S}, or lambda_k * sigma_F
    double reference_radius;
    int t0;                   // places in S u {oo} where F has a zero
    double error_exponent;    // 1/n if t0 = 0, else 1/(n-1)
    int log_power;            // max(0, t0 - 1)
};

CountSeries asymptotic_report(const BinaryForm& F, const PrimeSet& S,
                              const std::vector<Z>& grid,
                              std::optional<int> k = std::nullopt,
                              int threads = 1, double tol = 1e-3, int J = 8,
                              long Pmax = 10000);

struct RichTarget {
    Z m;
    long count;
};

// Values 1 <= |m| <= M with the most representations F(p,q) = m in the scan
// box, sorted by count desc then |m|, m. Cubic forms only.
std::vector<RichTarget> richest_targets(const BinaryForm& F, const Z& M,
                                        size_t top = 10, int threads = 1,
                                        int margin = 2);

struct GpfShell {
    int shell;            // pairs with max(|p|,|q|) in [2^i, 2^{i+1})
    Z min_gpf;
    Z max_gpf;
    std::pair<Z, Z> min_pair;  // witness for min_gpf
    double shape;         // log2|h| * log3|h| / log4|h| (iterated logs), NaN
                          // when the iterated logs are not yet positive
};

// Min/max of gpf(F(p,q)) over coprime pairs with F != 0, per dyadic shell.
std::vector<GpfShell> gpf_scan(const BinaryForm& F, int max_shell,
                               int threads = 1);

}  // namespace dio
