#pragma once

#include "dio/arith.hpp"
#include "dio/intpoly.hpp"

#include <map>
#include <optional>
#include <string>

namespace dio {

enum class BoundName {
    lewis_mahler,
    mahler84,
    bombieri_schmidt,
    stewart91,
    evertse97,
    evertse84,
    beukers_schlickewei,
    thm15,
    est_lower,
    ks_lower,
    bugeaud_gyory,
};

enum class BoundSide { upper_count, lower_count, height_bound };

// Evaluated bound. log_value (natural log) is always filled; value is only
// meaningful when !log_form. Bounds whose log exceeds 700 are carried in log
// form end-to-end. exact is set when the formula evaluates to an integer.
struct BoundSpec {
    BoundName name;
    std::map<std::string, Q> params;
    BoundSide side;
    bool log_form = false;
    double value = 0;
    double log_value = 0;
    std::optional<Z> exact;
    std::map<std::string, double> components;  // e.g. log_c_n for bugeaud_gyory
};

BoundName bound_name_from_string(const std::string& s);
std::string to_string(BoundName n);

// Parameter names per formula (all passed as exact rationals):
//   lewis_mahler:        n, H, t, c1, c2   -> (c1 n H)^sqrt(n) + (c2 n)^(t+1)
//   mahler84:            n, omega          -> 64 n^(omega+1)
//   bombieri_schmidt:    n, omega, c0      -> c0 n^(omega+1)
//   stewart91:           n, omega          -> 4200 n^(omega+1)
//   evertse97:           n, t              -> 2 (10^5 n)^(t+1)
//   evertse84:           t                 -> 7^(2t+4)
//   beukers_schlickewei: r                 -> 2^(16(r+1))
//   thm15:               n, beta1          -> 2^30 d^-3 log(3n) log(d^-1 log 3n)
//   est_lower:           t, eps            -> exp((4-eps)(t/log t)^(1/2))
//   ks_lower:            t, eps            -> exp(t^(2-sqrt(2)-eps))
//   bugeaud_gyory:       n, H, M           -> c(n) H^(2n-2) (log H)^(2n-1) log M,
//                                             c(n) = 3^(3(n+9)) n^(18(n+1));
//                                             bounds log|p,q|, side height_bound
// The unknown absolute constants c0, c1, c2 are required parameters.
BoundSpec eval_bound(BoundName name, const std::map<std::string, Q>& params);

struct VerifyReport {
    std::string status;  // PASS | FAIL | INFO
    std::string detail;
    Z observed;
    BoundSpec bound;
};

// PASS/FAIL for upper-count bounds; lower-count bounds always yield INFO (the
// underlying statements quantify over infinitely many instances). Height
// bounds are a side mismatch for count verification.
VerifyReport verify_counts(const Z& observed, const BoundSpec& bound);

}  // namespace dio
