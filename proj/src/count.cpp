#include "dio/count.hpp"

#include "dio/intpoly.hpp"
#include "dio/padic.hpp"
#include "dio/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dio {

namespace {

using i128 = __int128;

Z pow_z(const Z& b, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Z iroot_ceil(const Z& x, unsigned long e) {
    if (x <= 0) return 0;
    Z r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), e);
    if (pow_z(r, e) < x) ++r;
    return r;
}

Z z_from_i128(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    Z r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(u & ~0ULL);
    return neg ? Z(-r) : r;
}

// Durand-Kerner on double coefficients (lowest-degree first, leading != 0);
// appends the real parts of all roots.
void dk_real_parts(std::vector<std::complex<double>> c, std::vector<double>& out) {
    int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return;
    for (int i = 0; i <= n; ++i) c[i] /= c[n];
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed(0.4, 0.9), acc(1, 0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0, span = 0;
        for (int i = 0; i < n; ++i) span = std::max(span, std::abs(r[i]));
        for (int i = 0; i < n; ++i) {
            std::complex<double> num = 0;
            for (int j = n; j >= 0; --j) num = num * r[i] + c[j];
            std::complex<double> den(1, 0);
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (r[i] - r[j]);
            std::complex<double> d = num / den;
            r[i] -= d;
            delta = std::max(delta, std::abs(d));
        }
        if (delta < 1e-14 * (1 + span)) break;
    }
    for (const auto& z : r) out.push_back(z.real());
}

// Exact per-row scanning of |F(p, q)| <= Zb over p in [-B, B]. Boundary
// crossings are located in double precision from the roots of u_q(p) -+ Zb;
// every integer within +-3 of a located root (real part) is tested exactly,
// and the runs in between are classified from exact evaluations at their
// endpoints and midpoint, falling back to a full exact scan on disagreement.
struct RowScanner {
    const BinaryForm* F = nullptr;
    int n = 0;
    long B = 0;
    Z Zb;
    bool fast = false;
    std::vector<long long> As;  // signed coefficients, highest X-power first
    i128 zcap = 0;
    double zd = 0;

    void init(const BinaryForm& form, const Z& bound, long box) {
        F = &form;
        n = form.degree();
        B = box;
        Zb = bound;
        zd = bound.get_d();
        fast = true;
        Z total = 0, bz(B);
        As.clear();
        for (int i = 0; i <= n; ++i) {
            const Z& a = form.a(i);
            if (!a.fits_slong_p()) fast = false;
            else As.push_back(a.get_si());
            total += abs(a) * pow_z(bz, n);
        }
        Z lim = pow_z(Z(2), 125);
        if (total >= lim || Zb >= lim) fast = false;
        if (fast) {
            zcap = 0;
            Z t = Zb;
            int shift = 0;
            while (t > 0) {
                zcap |= (i128)(t.get_ui() & 0xffffffffUL) << shift;
                t >>= 32;
                shift += 32;
            }
        }
    }

    i128 eval_fast(long p, long q) const {
        i128 v = As[0];
        i128 qi = 1;
        for (int i = 1; i <= n; ++i) {
            qi *= q;
            v = v * p + (i128)As[i] * qi;
        }
        return v;
    }

    bool member(long p, long q) const {
        if (fast) {
            i128 v = eval_fast(p, q);
            if (v < 0) v = -v;
            return v <= zcap;
        }
        return abs(eval(*F, Z(p), Z(q))) <= Zb;
    }

    Z value(long p, long q) const {
        if (fast) return z_from_i128(eval_fast(p, q));
        return eval(*F, Z(p), Z(q));
    }

    void intervals(long q, std::vector<std::pair<long, long>>& out) const {
        out.clear();
        // double coefficients of u_q(p), lowest-degree-in-p first
        std::vector<std::complex<double>> c(n + 1);
        double qd = static_cast<double>(q);
        double qp = 1;
        std::vector<bool> exact_zero(n + 1, false);
        for (int i = 0; i <= n; ++i) {
            c[n - i] = F->a(i).get_d() * qp;
            exact_zero[n - i] = (F->a(i) == 0) || (q == 0 && i > 0);
            qp *= qd;
        }
        int deg = n;
        while (deg > 0 && exact_zero[deg]) --deg;
        if (deg == 0) {
            if (abs(eval(*F, Z(0), Z(q))) <= Zb) out.emplace_back(-B, B);
            return;
        }
        c.resize(deg + 1);
        std::vector<double> bps;
        for (int s : {-1, +1}) {
            std::vector<std::complex<double>> cs = c;
            cs[0] += static_cast<double>(s) * zd;
            dk_real_parts(cs, bps);
        }
        std::vector<long> marks;
        for (double x : bps) {
            if (!(x > -static_cast<double>(B) - 8 && x < static_cast<double>(B) + 8))
                continue;
            long c0 = static_cast<long>(std::floor(x));
            for (long d = c0 - 3; d <= c0 + 4; ++d)
                if (d >= -B && d <= B) marks.push_back(d);
        }
        std::sort(marks.begin(), marks.end());
        marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

        auto add = [&](long a, long b) {
            if (!out.empty() && out.back().second + 1 == a) out.back().second = b;
            else out.emplace_back(a, b);
        };
        size_t mi = 0;
        long cur = -B;
        while (cur <= B) {
            if (mi < marks.size() && marks[mi] == cur) {
                if (member(cur, q)) add(cur, cur);
                ++cur;
                ++mi;
                continue;
            }
            long end = (mi < marks.size()) ? marks[mi] - 1 : B;
            bool fa = member(cur, q);
            bool fb = member(end, q);
            bool fm = member(cur + (end - cur) / 2, q);
            if (fa == fb && fb == fm) {
                if (fa) add(cur, end);
            } else {
                for (long p = cur; p <= end; ++p)
                    if (member(p, q)) add(p, p);
            }
            cur = end + 1;
        }
    }
};

struct BoxPlan {
    Z core, scan;
    long B, C;
};

BoxPlan plan_box(const BinaryForm& F, const Z& Zb, int margin) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("count: degree must be >= 3");
    if (discriminant(F) == 0)
        throw std::invalid_argument("count: discriminant must be non-zero");
    if (Zb < 0) throw std::invalid_argument("count: Z must be non-negative");
    if (margin < 1) throw std::invalid_argument("count: margin must be >= 1");
    BoxPlan bp;
    bp.core = iroot_ceil(4 * Zb, static_cast<unsigned long>(n - 2));
    bp.scan = bp.core * margin;
    if (!bp.scan.fits_slong_p() || bp.scan > Z(1) << 40)
        throw std::domain_error("count: scan box too large");
    bp.B = bp.scan.get_si();
    bp.C = bp.core.get_si();
    return bp;
}

long overlap(long a, long b, long lo, long hi) {
    long x = std::max(a, lo), y = std::min(b, hi);
    return y >= x ? y - x + 1 : 0;
}

struct InOut {
    Z in = 0, out = 0;
};

}  // namespace

CountResult count_A(const BinaryForm& F, const PrimeSet& S, const Z& Zbound,
                    int threads, int margin) {
    BoxPlan bp = plan_box(F, Zbound, margin);
    RowScanner rs;
    rs.init(F, Zbound, bp.B);
    InOut acc;
    if (S.empty()) {
        acc = parallel_chunks<InOut>(
            0, bp.B + 1, 4096, threads, InOut{},
            [&](long qa, long qb) {
                InOut io;
                std::vector<std::pair<long, long>> iv;
                for (long q = qa; q < qb; ++q) {
                    rs.intervals(q, iv);
                    long w = (q == 0) ? 1 : 2;
                    for (auto [a, b] : iv) {
                        long total = b - a + 1;
                        long inside =
                            (q <= bp.C) ? overlap(a, b, -bp.C, bp.C) : 0;
                        io.in += w * Z(inside);
                        io.out += w * Z(total - inside);
                    }
                }
                return io;
            },
            [](InOut a, InOut b) {
                a.in += b.in;
                a.out += b.out;
                return a;
            });
    } else {
        // t >= 1: product over S u {oo} of |F(p,q)|_P <= Z with
        // gcd(p, q, P1...Pt) = 1 -- the S-stripped part of |F| is <= Z.
        Z radz = S.radical();
        if (!radz.fits_slong_p())
            throw std::domain_error("count_A: prime set radical too large");
        long rad = radz.get_si();
        std::vector<long long> sp;
        for (const auto& P : S.primes) sp.push_back(P.get_si());
        acc = parallel_chunks<InOut>(
            0, bp.B + 1, 64, threads, InOut{},
            [&](long qa, long qb) {
                InOut io;
                for (long q = qa; q < qb; ++q) {
                    long w = (q == 0) ? 1 : 2;
                    for (long p = -bp.B; p <= bp.B; ++p) {
                        long g = std::gcd(std::gcd(std::abs(p), q), rad);
                        if (g != 1) continue;
                        bool ok;
                        if (rs.fast) {
                            i128 v = rs.eval_fast(p, q);
                            if (v < 0) v = -v;
                            if (v == 0) ok = true;
                            else {
                                for (long long P : sp)
                                    while (v % P == 0) v /= P;
                                ok = v <= rs.zcap;
                            }
                        } else {
                            Z v = eval(F, Z(p), Z(q));
                            ok = (v == 0) ||
                                 (strip_smooth(v, S).first <= Zbound);
                        }
                        if (!ok) continue;
                        bool inside =
                            q <= bp.C && p >= -bp.C && p <= bp.C;
                        (inside ? io.in : io.out) += w;
                    }
                }
                return io;
            },
            [](InOut a, InOut b) {
                a.in += b.in;
                a.out += b.out;
                return a;
            });
    }
    return {acc.in, bp.core, bp.scan, acc.out};
}

namespace {

struct ValueSets {
    std::set<Z> core, band;
};

CountResult count_values(const BinaryForm& F, const Z& Zbound, int threads,
                         int margin, int kfree) {
    BoxPlan bp = plan_box(F, Zbound, margin);
    RowScanner rs;
    rs.init(F, Zbound, bp.B);
    int n = F.degree();
    bool odd = (n % 2) != 0;
    ValueSets acc = parallel_chunks<ValueSets>(
        0, bp.B + 1, 1024, threads, ValueSets{},
        [&](long qa, long qb) {
            ValueSets vs;
            std::vector<std::pair<long, long>> iv;
            for (long q = qa; q < qb; ++q) {
                rs.intervals(q, iv);
                for (auto [a, b] : iv)
                    for (long p = a; p <= b; ++p) {
                        Z v = rs.value(p, q);
                        if (v == 0) continue;
                        if (kfree >= 2 && !is_kfree(v, kfree)) continue;
                        bool inside = q <= bp.C && p >= -bp.C && p <= bp.C;
                        auto& s = inside ? vs.core : vs.band;
                        s.insert(v);
                        if (q > 0) s.insert(odd ? Z(-v) : v);  // (-p,-q)
                    }
            }
            return vs;
        },
        [](ValueSets a, ValueSets b) {
            a.core.insert(b.core.begin(), b.core.end());
            a.band.insert(b.band.begin(), b.band.end());
            return a;
        });
    Z extra = 0;
    for (const auto& v : acc.band)
        if (!acc.core.count(v)) ++extra;
    return {Z(static_cast<long>(acc.core.size())), bp.core, bp.scan, extra};
}

}  // namespace

CountResult count_R(const BinaryForm& F, const Z& Zbound, int threads,
                    int margin) {
    return count_values(F, Zbound, threads, margin, 0);
}

CountResult count_Rk(const BinaryForm& F, int k, const Z& Zbound, int threads,
                     int margin) {
    if (k < 2) throw std::invalid_argument("count_Rk: k must be >= 2");
    return count_values(F, Zbound, threads, margin, k);
}

CountResult count_Nk(const BinaryForm& F, int k, const Z& Zbound, int threads,
                     int margin) {
    if (k < 2) throw std::invalid_argument("count_Nk: k must be >= 2");
    BoxPlan bp = plan_box(F, Zbound, margin);
    // fixed-divisor check: no prime P <= 100 may have P^k | F everywhere
    for (long P : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L,
                   41L, 43L, 47L, 53L, 59L, 61L, 67L, 71L, 73L, 79L, 83L,
                   89L, 97L}) {
        if (rho_prime_power(F, Z(P), k) == pow_z(Z(P), 2UL * k))
            throw std::domain_error("count_Nk: P^k divides F identically");
    }
    RowScanner rs;
    rs.init(F, Zbound, bp.B);
    InOut acc = parallel_chunks<InOut>(
        0, bp.B + 1, 1024, threads, InOut{},
        [&](long qa, long qb) {
            InOut io;
            std::vector<std::pair<long, long>> iv;
            for (long q = qa; q < qb; ++q) {
                rs.intervals(q, iv);
                long w = (q == 0) ? 1 : 2;
                for (auto [a, b] : iv)
                    for (long p = a; p <= b; ++p) {
                        Z v = rs.value(p, q);
                        if (v == 0 || !is_kfree(v, k)) continue;
                        bool inside = q <= bp.C && p >= -bp.C && p <= bp.C;
                        (inside ? io.in : io.out) += w;
                    }
            }
            return io;
        },
        [](InOut a, InOut b) {
            a.in += b.in;
            a.out += b.out;
            return a;
        });
    return {acc.in, bp.core, bp.scan, acc.out};
}

EulerProduct lambda_k(const BinaryForm& F, int k, long Pmax) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("lambda_k: degree must be >= 3");
    if (k < 2) throw std::invalid_argument("lambda_k: k must be >= 2");
    if (Pmax < 2) throw std::invalid_argument("lambda_k: Pmax must be >= 2");
    Z D = discriminant(F);
    if (D == 0) throw std::invalid_argument("lambda_k: discriminant is zero");

    std::vector<char> comp(static_cast<size_t>(Pmax) + 1, 0);
    std::vector<Z> primes;
    for (long p = 2; p <= Pmax; ++p) {
        if (comp[p]) continue;
        primes.emplace_back(p);
        for (long m = p; m <= Pmax; m += p) comp[m] = 1;
    }
    for (const auto& [P, e] : factorize(D).factors)
        if (P > Pmax) primes.push_back(P);

    double value = 1.0;
    for (const auto& P : primes) {
        Z r = rho_prime_power(F, P, k);
        Z P2k = pow_z(P, 2UL * k);
        if (r >= P2k)
            throw std::domain_error("lambda_k: fixed divisor P^k | F detected");
        value *= Q(P2k - r, P2k).get_d();
    }

    // validate the tail bound rho_F(P^k) <= n P^k + P^{2k-2} for P coprime to
    // the discriminant, against exact rho for P <= 100
    bool validated = true;
    for (const auto& P : primes) {
        if (P > 100) break;
        if (mpz_divisible_p(D.get_mpz_t(), P.get_mpz_t())) continue;
        Z bound = n * pow_z(P, k) + pow_z(P, 2UL * k - 2);
        if (rho_prime_power(F, P, k) > bound) validated = false;
    }
    double eps = static_cast<double>(n + 1) / static_cast<double>(Pmax);
    if (eps >= 0.5) validated = false;
    EulerProduct out;
    out.value = value;
    out.tail_validated = validated;
    out.tail_bound =
        validated ? value * eps : std::numeric_limits<double>::quiet_NaN();
    return out;
}

CountSeries asymptotic_report(const BinaryForm& F, const PrimeSet& S,
                              const std::vector<Z>& grid, std::optional<int> k,
                              int threads, double tol, int J, long Pmax) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("asymptotic_report: degree >= 3");
    if (k && !S.empty())
        throw std::invalid_argument(
            "asymptotic_report: k-free variant requires empty S");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= 0 || (i > 0 && grid[i] <= grid[i - 1]))
            throw std::invalid_argument(
                "asymptotic_report: grid must be increasing and positive");
    }

    CountSeries cs;
    // t0: places of S u {oo} at which F has a zero
    int t0 = 0;
    ZPoly f = F.dehomogenize();
    bool real_zero = (n % 2 == 1) || (F.a(0) == 0);
    if (!real_zero) real_zero = !real_roots_double(f).empty();
    if (real_zero) ++t0;
    for (const auto& P : S.primes) {
        PAdicRootsResult rr = padic_roots_with_poles(f, P, 1);
        if (!rr.roots.empty() || !rr.undecided.empty()) ++t0;
    }
    cs.t0 = t0;
    cs.error_exponent = (t0 == 0) ? 1.0 / n : 1.0 / (n - 1);
    cs.log_power = std::max(0, t0 - 1);

    if (k) {
        EulerProduct lam = lambda_k(F, *k, Pmax);
        AreaEstimate sig = sigma_archimedean(F, tol);
        double lam_lo = lam.tail_validated ? lam.value - lam.tail_bound
                                           : lam.value;
        double lo = lam_lo * (sig.value - sig.radius);
        double hi = lam.value * (sig.value + sig.radius);
        cs.reference = (lo + hi) / 2;
        cs.reference_radius = (hi - lo) / 2;
    } else {
        AreaEstimate sig = sigma_S(F, S, J, tol);
        cs.reference = sig.value;
        cs.reference_radius = sig.radius;
    }

    for (const auto& Zv : grid) {
        CountSeriesEntry e;
        e.Zvalue = Zv;
        e.result = k ? count_Nk(F, *k, Zv, threads)
                     : count_A(F, S, Zv, threads);
        e.normalized =
            e.result.count.get_d() / std::pow(Zv.get_d(), 2.0 / n);
        cs.entries.push_back(std::move(e));
    }
    return cs;
}

std::vector<RichTarget> richest_targets(const BinaryForm& F, const Z& M,
                                        size_t top, int threads, int margin) {
    if (F.degree() != 3)
        throw std::invalid_argument("richest_targets: cubic forms only");
    BoxPlan bp = plan_box(F, M, margin);
    RowScanner rs;
    rs.init(F, M, bp.B);
    using Bucket = std::map<Z, long>;
    Bucket buckets = parallel_chunks<Bucket>(
        0, bp.B + 1, 1024, threads, Bucket{},
        [&](long qa, long qb) {
            Bucket bk;
            std::vector<std::pair<long, long>> iv;
            for (long q = qa; q < qb; ++q) {
                rs.intervals(q, iv);
                for (auto [a, b] : iv)
                    for (long p = a; p <= b; ++p) {
                        Z v = rs.value(p, q);
                        if (v == 0) continue;
                        bk[v] += 1;
                        if (q > 0) bk[Z(-v)] += 1;  // mirror (-p,-q), odd degree
                    }
            }
            return bk;
        },
        [](Bucket a, Bucket b) {
            for (auto& [m, c] : b) a[m] += c;
            return a;
        });
    std::vector<RichTarget> all;
    all.reserve(buckets.size());
    for (auto& [m, c] : buckets) all.push_back({m, c});
    std::sort(all.begin(), all.end(), [](const RichTarget& x, const RichTarget& y) {
        if (x.count != y.count) return x.count > y.count;
        Z ax = abs(x.m), ay = abs(y.m);
        if (ax != ay) return ax < ay;
        return x.m < y.m;
    });
    if (all.size() > top) all.resize(top);
    return all;
}

namespace {

const std::vector<long>& small_primes_64k() {
    static const std::vector<long> primes = [] {
        std::vector<char> comp(65536, 0);
        std::vector<long> out;
        for (long p = 2; p < 65536; ++p) {
            if (comp[p]) continue;
            out.push_back(p);
            for (long m = p; m < 65536; m += p) comp[m] = 1;
        }
        return out;
    }();
    return primes;
}

Z gpf_i128(i128 v) {
    if (v < 0) v = -v;
    if (v <= 1) return Z(1);
    long best = 1;
    for (long p : small_primes_64k()) {
        if ((i128)p * p > v) break;
        if (v % p == 0) {
            best = p;
            while (v % p == 0) v /= p;
        }
    }
    if (v == 1) return Z(best);
    // no factor <= min(65536, sqrt(v)) remains, so a cofactor below 65536^2
    // is prime; larger cofactors go to the general factorizer
    if (v < (i128)65536 * 65536)
        return Z(std::max(best, static_cast<long>(v)));
    Z g = gpf(z_from_i128(v));
    return std::max(g, Z(best));
}

}  // namespace

std::vector<GpfShell> gpf_scan(const BinaryForm& F, int max_shell,
                               int threads) {
    int n = F.degree();
    if (n < 3) throw std::invalid_argument("gpf_scan: degree must be >= 3");
    if (!is_irreducible(F))
        throw std::invalid_argument("gpf_scan: form must be irreducible");
    if (max_shell < 0 || max_shell > 24)
        throw std::invalid_argument("gpf_scan: max_shell out of range");

    struct ShellAcc {
        Z mn = 0, mx = 0;
        std::pair<Z, Z> arg{0, 0};
        bool any = false;
    };

    std::vector<GpfShell> out;
    for (int i = 0; i <= max_shell; ++i) {
        long lo = 1L << i, hi = (1L << (i + 1)) - 1;
        // fast path valid when every |F| in the shell fits well inside i128
        Z bound = 0;
        for (int j = 0; j <= n; ++j)
            bound += abs(F.a(j)) * pow_z(Z(hi), n);
        bool fast = bound < (Z(1) << 120);
        for (int j = 0; j <= n; ++j)
            if (!F.a(j).fits_slong_p()) fast = false;
        std::vector<long long> As;
        if (fast)
            for (int j = 0; j <= n; ++j) As.push_back(F.a(j).get_si());

        auto eval_z = [&](long p, long q) {
            if (fast) {
                i128 v = As[0];
                i128 qi = 1;
                for (int j = 1; j <= n; ++j) {
                    qi *= q;
                    v = v * p + (i128)As[j] * qi;
                }
                return v;
            }
            return (i128)0;
        };

        ShellAcc acc = parallel_chunks<ShellAcc>(
            0, hi + 1, 16, threads, ShellAcc{},
            [&](long qa, long qb) {
                ShellAcc sa;
                auto visit = [&](long p, long q) {
                    if (std::gcd(std::abs(p), q) != 1) return;
                    Z g;
                    if (fast) {
                        i128 v = eval_z(p, q);
                        if (v == 0) return;
                        g = gpf_i128(v);
                    } else {
                        Z v = eval(F, Z(p), Z(q));
                        if (v == 0) return;
                        g = gpf(v);
                    }
                    if (!sa.any || g < sa.mn) {
                        sa.mn = g;
                        sa.arg = {Z(p), Z(q)};
                    }
                    if (!sa.any || g > sa.mx) sa.mx = g;
                    sa.any = true;
                };
                for (long q = qa; q < qb; ++q) {
                    if (q == 0) {
                        for (long p = lo; p <= hi; ++p) visit(p, 0);
                    } else if (q >= lo) {
                        for (long p = -hi; p <= hi; ++p) visit(p, q);
                    } else {
                        for (long p = -hi; p <= -lo; ++p) visit(p, q);
                        for (long p = lo; p <= hi; ++p) visit(p, q);
                    }
                }
                return sa;
            },
            [](ShellAcc a, ShellAcc b) {
                if (!b.any) return a;
                if (!a.any) return b;
                if (b.mn < a.mn) {
                    a.mn = b.mn;
                    a.arg = b.arg;
                }
                if (b.mx > a.mx) a.mx = b.mx;
                return a;
            });

        GpfShell sh;
        sh.shell = i;
        sh.min_gpf = acc.mn;
        sh.max_gpf = acc.mx;
        sh.min_pair = acc.arg;
        double l1 = std::log(static_cast<double>(lo));
        double l2 = l1 > 0 ? std::log(l1) : -1;
        double l3 = l2 > 0 ? std::log(l2) : -1;
        double l4 = l3 > 0 ? std::log(l3) : -1;
        sh.shape = (l2 > 0 && l3 > 0 && l4 > 0)
                       ? l2 * l3 / l4
                       : std::numeric_limits<double>::quiet_NaN();
        out.push_back(std::move(sh));
    }
    return out;
}

}  // namespace dio
