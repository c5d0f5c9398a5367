#include "dio/approx.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dio {

namespace {

Q q_pow(const Q& base, long e) {
    if (base == 0) throw std::invalid_argument("q_pow: zero base");
    Z num = base.get_num(), den = base.get_den();
    if (e < 0) {
        std::swap(num, den);
        e = -e;
        if (num < 0) {
            num = -num;
            den = -den;
        }
    }
    Z pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), e);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), e);
    Q r(pn, pd);
    r.canonicalize();
    return r;
}

long lcm_long(long a, long b) {
    Z g;
    mpz_gcd(g.get_mpz_t(), Z(a).get_mpz_t(), Z(b).get_mpz_t());
    return a / g.get_si() * b;
}

// sign of (x - k^g1 * h^g2), x >= 0 rational, k > 0 rational, h >= 1 integer,
// g1, g2 rational. Exact: raise both sides to the lcm of the exponent
// denominators, reducing to an integer-exponent rational comparison.
int cmp_vs_power(const Q& x, const Q& k, const Z& h, const Q& g1, const Q& g2) {
    if (x < 0) throw std::invalid_argument("cmp_vs_power: negative x");
    if (x == 0) return -1;  // rhs > 0 always
    long L = lcm_long(g1.get_den().get_si(), g2.get_den().get_si());
    Q lhs = q_pow(x, L);
    Q g1L = g1 * L, g2L = g2 * L;
    long e1 = g1L.get_num().get_si();
    long e2 = g2L.get_num().get_si();
    Q rhs = q_pow(k, e1);
    if (h != 1) rhs *= q_pow(Q(h), e2);
    return cmp(lhs, rhs);
}

}  // namespace

GammaTupleSet gamma_tuples(const Q& beta, const Q& beta1, int t) {
    if (t < 0) throw std::invalid_argument("gamma_tuples: t >= 0 required");
    if (!(beta1 > 0) || !(beta > beta1))
        throw std::invalid_argument("gamma_tuples: need beta > beta1 > 0");
    GammaTupleSet out;
    out.beta = beta;
    out.beta1 = beta1;
    out.t = t;
    out.lambda = beta / beta1 - 1;
    Q ratio = Q(t + 1) / out.lambda;
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), ratio.get_num().get_mpz_t(),
               ratio.get_den().get_mpz_t());
    out.v = 1 + fl.get_si();
    // colexicographic: later places vary slowest
    std::vector<long> cur(t + 1, 0);
    auto go = [&](auto&& self, int pos, long rem) -> void {
        if (pos == 0) {
            cur[0] = rem;
            out.tuples.push_back(cur);
            return;
        }
        for (long f = 0; f <= rem; ++f) {
            cur[pos] = f;
            self(self, pos - 1, rem - f);
        }
    };
    go(go, t, out.v);
    return out;
}

// ---------------------------------------------------------------------------
// Real roots as exact isolating intervals
// ---------------------------------------------------------------------------

namespace {

int sign_q(const Q& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

void RealRootInterval::refine() {
    if (is_point()) return;
    Q mid = (lo + hi) / 2;
    Q fm = eval(f, mid);
    if (fm == 0) {
        lo = hi = mid;
        return;
    }
    if (sign_q(eval(f, lo)) * sign_q(fm) < 0)
        hi = mid;
    else
        lo = mid;
}

void RealRootInterval::refine_below(const Q& target_width) {
    while (!is_point() && width() > target_width) refine();
}

std::vector<RealRootInterval> real_roots_isolated(const ZPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("real_roots_isolated: zero polynomial");
    ZPoly g = squarefree_part(f);
    if (g.degree() < 1) return {};
    std::vector<double> rr = real_roots_double(g);
    std::sort(rr.begin(), rr.end());
    double sep = 1.0;
    for (size_t i = 1; i < rr.size(); ++i)
        sep = std::min(sep, rr[i] - rr[i - 1]);
    std::vector<RealRootInterval> out;
    for (double r : rr) {
        Q center(r);  // exact binary rational
        bool placed = false;
        for (Q eps(sep / 4); !placed; eps /= 2) {
            Q lo = center - eps, hi = center + eps;
            int sl = sign_q(eval(g, lo)), sh = sign_q(eval(g, hi));
            if (sl == 0) {
                out.push_back({g, lo, lo});
                placed = true;
            } else if (sh == 0) {
                out.push_back({g, hi, hi});
                placed = true;
            } else if (sl * sh < 0) {
                out.push_back({g, lo, hi});
                placed = true;
            } else if (eps < Q(1, 1l << 40)) {
                throw PrecisionError("real_roots_isolated: could not certify root near " +
                                     std::to_string(r));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// System checking
// ---------------------------------------------------------------------------

SystemCheck check_system(const ApproxSystem& sys, const Z& p, const Z& q) {
    if (q <= 0) throw std::invalid_argument("check_system: q > 0 required");
    Z g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::invalid_argument("check_system: gcd(p,q) != 1");
    if (sys.roots.size() != sys.gammas.size())
        throw std::invalid_argument("check_system: places/gammas mismatch");
    Q gsum = 0;
    for (const auto& gm : sys.gammas) {
        if (gm < 0) throw std::invalid_argument("check_system: Gamma < 0");
        gsum += gm;
    }
    if (gsum != 1) throw std::invalid_argument("check_system: sum Gamma != 1");
    if (sys.k < 1) throw std::invalid_argument("check_system: k >= 1 required");

    Z ap = abs(p), aq = abs(q);
    Z h = std::max(ap, aq);
    if (h == 0) throw std::invalid_argument("check_system: (p,q) = (0,0)");
    double log10_k = std::log10(sys.k.get_d());
    double log10_h = h == 1 ? 0.0 : std::log10(Q(h).get_d());
    double b1 = sys.beta1.get_d();

    SystemCheck out;
    out.holds = true;
    for (size_t i = 0; i < sys.roots.size(); ++i) {
        const Q& gamma = sys.gammas[i];
        Q g1 = gamma;            // exponent of k in the rhs
        Q g2 = -sys.beta1 * gamma;  // exponent of h
        double log10_rhs = gamma.get_d() * (log10_k - b1 * log10_h);
        PlaceReport rep;
        rep.gamma = gamma;
        if (gamma == 0) {
            rep.holds = true;  // rhs = 1 >= min(1, .) always
            rep.log10_margin = 0.0;
            out.places.push_back(rep);
            continue;
        }
        // rhs >= 1 makes the place vacuous
        bool rhs_ge_1 = cmp_vs_power(Q(1), sys.k, h, g1, g2) <= 0;

        double log10_lhs;
        bool holds;
        const PlaceRoot& pr = sys.roots[i];
        if (!pr.archimedean) {
            PAdicDistance d = padic_distance(pr.padic, p, q);
            if (d.exact) {
                holds = rhs_ge_1 || cmp_vs_power(d.value, sys.k, h, g1, g2) <= 0;
            } else if (rhs_ge_1 || cmp_vs_power(d.value, sys.k, h, g1, g2) <= 0) {
                holds = true;  // the upper bound already clears the rhs
            } else {
                throw PrecisionError("check_system: p-adic root needs re-lift at P=" +
                                     pr.padic.prime.get_str());
            }
            log10_lhs = d.value == 0 ? -std::numeric_limits<double>::infinity()
                                     : std::log10(d.value.get_d());
        } else {
            RealRootInterval iv = pr.real;
            Q pq(p, q);
            pq.canonicalize();
            if (eval(iv.f, pq) == 0) {
                holds = true;  // p/q is exactly the root
                log10_lhs = -std::numeric_limits<double>::infinity();
            } else {
                holds = rhs_ge_1;
                bool decided = rhs_ge_1;
                for (int iter = 0; iter < 256 && !decided; ++iter) {
                    Q a = iv.lo - pq, b = pq - iv.hi;
                    Q dlo = std::max(a, b);
                    if (dlo < 0) dlo = 0;
                    Q c = iv.hi - pq, d2 = pq - iv.lo;
                    Q dhi = std::max(c, d2);
                    Q llo = std::min(Q(1), dlo), lhi = std::min(Q(1), dhi);
                    if (cmp_vs_power(lhi, sys.k, h, g1, g2) <= 0) {
                        holds = true;
                        decided = true;
                    } else if (cmp_vs_power(llo, sys.k, h, g1, g2) > 0) {
                        holds = false;
                        decided = true;
                    } else {
                        iv.refine();
                        if (iv.is_point() && eval(iv.f, iv.lo) == 0 && iv.lo == pq) {
                            holds = true;
                            decided = true;
                        }
                    }
                }
                if (!decided)
                    throw PrecisionError(
                        "check_system: archimedean comparison undecided after "
                        "refinement");
                Q dmid = abs((iv.lo + iv.hi) / 2 - pq);
                log10_lhs = dmid == 0 ? -std::numeric_limits<double>::infinity()
                                      : std::log10(std::min(Q(1), dmid).get_d());
            }
        }
        rep.holds = holds;
        rep.log10_margin = log10_rhs - log10_lhs;
        out.places.push_back(rep);
        if (!holds) out.holds = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gap principle and explicit bounds
// ---------------------------------------------------------------------------

Q gap_threshold(const Q& k, const Q& beta1, const Z& h1) {
    if (k <= 0 || beta1 <= 0) throw std::invalid_argument("gap_threshold: k, beta1 > 0");
    if (h1 < 1) throw std::invalid_argument("gap_threshold: h1 >= 1");
    // hypothesis h1 > k^(1/beta1)  <=>  h1^num(beta1) > k^den(beta1)
    long bn = beta1.get_num().get_si(), bd = beta1.get_den().get_si();
    if (q_pow(Q(h1), bn) <= q_pow(k, bd))
        throw std::invalid_argument("gap_threshold: h1 <= k^(1/beta1)");
    Q half_inv_k = Q(1) / (2 * k);
    if (bd == 1) return half_inv_k * q_pow(Q(h1), bn - 1);
    // non-integer beta1: certified lower bound via downward-rounded mpfr
    mpfr_t x, e;
    mpfr_init2(x, 128);
    mpfr_init2(e, 128);
    mpfr_set_z(x, h1.get_mpz_t(), MPFR_RNDD);
    mpfr_log(x, x, MPFR_RNDD);  // h1 >= 1 so log >= 0; RNDD keeps lower bound
    mpfr_set_q(e, Q(beta1 - 1).get_mpq_t(), MPFR_RNDD);
    mpfr_mul(x, x, e, MPFR_RNDD);
    mpfr_exp(x, x, MPFR_RNDD);
    Q r;
    mpfr_get_q(r.get_mpq_t(), x);
    mpfr_clear(x);
    mpfr_clear(e);
    return half_inv_k * r;
}

double thm15_count_bound(int n, const Q& beta1) {
    if (n < 3) throw std::invalid_argument("thm15_count_bound: n >= 3");
    if (beta1 <= 2) throw std::invalid_argument("thm15_count_bound: beta1 > 2");
    double delta = 1.0 - 2.0 / beta1.get_d();
    double l = std::log(3.0 * n);
    return std::pow(2.0, 30) * std::pow(delta, -3) * l * std::log(l / delta);
}

double thm15_height_floor(const Q& k, const Q& beta1, const Z& H) {
    if (beta1 <= 2) throw std::invalid_argument("thm15_height_floor: beta1 > 2");
    if (k <= 0 || H < 1) throw std::invalid_argument("thm15_height_floor: k > 0, H >= 1");
    return std::pow(4.0 * k.get_d(), 2.0 / (beta1.get_d() - 2.0)) * Q(H).get_d();
}

SolutionClass classify_solution(int n, const Z& Zbound, const Z& p, const Z& q) {
    if (n < 3) throw std::invalid_argument("classify_solution: n >= 3");
    if (p == 0 && q == 0) throw std::invalid_argument("classify_solution: (0,0)");
    if (Zbound < 1) throw std::invalid_argument("classify_solution: Z >= 1");
    Z ap = abs(p), aq = abs(q);
    Z h = std::max(ap, aq);
    Z hp;
    mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), n - 2);
    if (hp >= 4 * Zbound) return SolutionClass::large;
    mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), n - 1);
    if (hp >= Zbound) return SolutionClass::medium;
    return SolutionClass::small;
}

}  // namespace dio
