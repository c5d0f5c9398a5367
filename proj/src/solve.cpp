#include "dio/solve.hpp"

#include "dio/intpoly.hpp"
#include "dio/padic.hpp"
#include "dio/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dio {

namespace {

// F(p, q0) as a univariate polynomial in p.
ZPoly row_poly(const BinaryForm& F, const Z& q0) {
    int n = F.degree();
    std::vector<Z> c(n + 1);
    Z qp = 1;
    for (int i = 0; i <= n; ++i) {
        c[n - i] = F.coeffs[i] * qp;
        qp *= q0;
    }
    return ZPoly(std::move(c));
}

using PairVec = std::vector<std::pair<Z, Z>>;

void sort_by_height(PairVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        Z ha = std::max(Z(abs(a.first)), Z(abs(a.second)));
        Z hb = std::max(Z(abs(b.first)), Z(abs(b.second)));
        if (ha != hb) return ha < hb;
        return a < b;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

PairVec thue_zero_locus(const BinaryForm& F, const Z& B) {
    PairVec out;
    out.emplace_back(0, 0);
    for (const auto& fac : factor_over_Q(F).factors) {
        if (fac.factor.degree() != 1) continue;
        // aX + bY = 0 -> direction (-b, a)
        Z dx = -fac.factor.coeffs[1], dy = fac.factor.coeffs[0];
        Z g;
        mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
        dx /= g;
        dy /= g;
        Z step = std::max(Z(abs(dx)), Z(abs(dy)));
        for (Z t = 1; t * step <= B; ++t) {
            out.emplace_back(t * dx, t * dy);
            out.emplace_back(-t * dx, -t * dy);
        }
    }
    sort_by_height(out);
    return out;
}

}  // namespace

ThueResult solve_thue(const BinaryForm& F, const Z& m, const Z& B, int threads,
                      const std::optional<Z>& certified_bound) {
    if (F.degree() < 3) throw std::invalid_argument("solve_thue: degree >= 3 required");
    if (B < 1) throw std::invalid_argument("solve_thue: B >= 1 required");
    ThueResult res;
    res.box = B;
    res.certified_complete = certified_bound && *certified_bound <= B;
    if (m == 0) {
        res.solutions = thue_zero_locus(F, B);
        return res;
    }
    long Bl = B.get_si();
    res.solutions = parallel_chunks<PairVec>(
        -Bl, Bl + 1, 4096, threads, {},
        [&](long qa, long qb) {
            PairVec local;
            for (long q = qa; q < qb; ++q) {
                ZPoly u = row_poly(F, Z(q));
                if (u.degree() < 1) {
                    Z c = u.is_zero() ? Z(0) : u.c[0];
                    if (c == m)  // whole row solves (F independent of p here)
                        for (long p = -Bl; p <= Bl; ++p) local.emplace_back(p, q);
                    continue;
                }
                ZPoly g = sub(u, ZPoly(std::vector<Z>{m}));
                for (double r : real_roots_double(g)) {
                    long c0 = static_cast<long>(std::llround(r));
                    for (long p = c0 - 2; p <= c0 + 2; ++p) {
                        if (p < -Bl || p > Bl) continue;
                        if (eval(u, Z(p)) == m) local.emplace_back(p, q);
                    }
                }
            }
            return local;
        },
        [](PairVec acc, PairVec part) {
            acc.insert(acc.end(), part.begin(), part.end());
            return acc;
        });
    sort_by_height(res.solutions);
    return res;
}

TMResult solve_thue_mahler(const BinaryForm& F, const PrimeSet& S, const Z& B,
                           int threads, const std::optional<Z>& certified_bound) {
    if (F.degree() < 3)
        throw std::invalid_argument("solve_thue_mahler: degree >= 3 required");
    if (B < 1) throw std::invalid_argument("solve_thue_mahler: B >= 1 required");
    TMResult res;
    res.box = B;
    res.certified_complete = certified_bound && *certified_bound <= B;
    long Bl = B.get_si();
    using Vec = std::vector<TMSolution>;
    res.solutions = parallel_chunks<Vec>(
        -Bl, Bl + 1, 256, threads, {},
        [&](long qa, long qb) {
            Vec local;
            for (long q = qa; q < qb; ++q) {
                for (long p = -Bl; p <= Bl; ++p) {
                    if (std::gcd(p, q) != 1) continue;  // also drops (0,0)
                    Z v = eval(F, Z(p), Z(q));
                    if (v == 0) continue;
                    auto [stripped, z] = strip_smooth(v, S);
                    if (stripped != 1) continue;
                    local.push_back({Z(p), Z(q), Z(abs(v)), z});
                }
            }
            return local;
        },
        [](Vec acc, Vec part) {
            acc.insert(acc.end(), part.begin(), part.end());
            return acc;
        });
    std::sort(res.solutions.begin(), res.solutions.end(),
              [](const TMSolution& a, const TMSolution& b) {
                  Z ha = std::max(Z(abs(a.p)), Z(abs(a.q)));
                  Z hb = std::max(Z(abs(b.p)), Z(abs(b.q)));
                  if (ha != hb) return ha < hb;
                  if (a.p != b.p) return a.p < b.p;
                  return a.q < b.q;
              });
    return res;
}

// ---------------------------------------------------------------------------
// S-unit equations
// ---------------------------------------------------------------------------

namespace {

bool operator_less(const SUnitSolution& a, const SUnitSolution& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

std::vector<int> exponents_of(const Q& x, const PrimeSet& S) {
    std::vector<int> z(S.primes.size());
    for (size_t i = 0; i < S.primes.size(); ++i) {
        auto v = valuation(x, S.primes[i]);
        z[i] = static_cast<int>(*v);
    }
    return z;
}

// |x| must be exactly a product of powers of S (no residual factor).
bool is_sunit_within(const Q& x, const PrimeSet& S, int E) {
    if (x == 0) return false;
    Z num = abs(x.get_num()), den = x.get_den();
    for (size_t i = 0; i < S.primes.size(); ++i) {
        const Z& P = S.primes[i];
        long e = 0;
        while (mpz_divisible_p(num.get_mpz_t(), P.get_mpz_t())) {
            num /= P;
            ++e;
        }
        while (mpz_divisible_p(den.get_mpz_t(), P.get_mpz_t())) {
            den /= P;
            ++e;
        }
        if (e > E) return false;
    }
    return num == 1 && den == 1;
}

void emit_solution(std::vector<SUnitSolution>& out, const PrimeSet& S, const Q& x,
                   const Q& y) {
    SUnitSolution s;
    s.x = x;
    s.y = y;
    s.zx = exponents_of(x, S);
    s.zy = exponents_of(y, S);
    out.push_back(std::move(s));
}

void finalize_solutions(std::vector<SUnitSolution>& out) {
    std::sort(out.begin(), out.end(), operator_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

// all products prod P_i^{e_i}, 0 <= e_i <= E, value <= cap
void gen_smooth(const std::vector<Z>& primes, size_t idx, int E, const Z& cap,
                Z cur, std::vector<Z>& out) {
    if (idx == primes.size()) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= E; ++e) {
        gen_smooth(primes, idx + 1, E, cap, cur, out);
        cur *= primes[idx];
        if (cur > cap) break;
    }
}

void orbit_emit(std::vector<SUnitSolution>& out, const PrimeSet& S, const Z& A,
                const Z& B, const Z& C) {
    Q a(A), b(B), c(C);
    auto mk = [](const Q& n, const Q& d) {
        Q r = n / d;
        r.canonicalize();
        return r;
    };
    emit_solution(out, S, mk(a, c), mk(b, c));
    emit_solution(out, S, mk(b, c), mk(a, c));
    emit_solution(out, S, mk(-a, b), mk(c, b));
    emit_solution(out, S, mk(c, b), mk(-a, b));
    emit_solution(out, S, mk(-b, a), mk(c, a));
    emit_solution(out, S, mk(c, a), mk(-b, a));
}

}  // namespace

bool operator==(const SUnitSolution& a, const SUnitSolution& b) {
    return a.x == b.x && a.y == b.y;
}

std::vector<SUnitSolution> solve_sunit(const PrimeSet& S, int E, int threads) {
    if (E < 0) throw std::invalid_argument("solve_sunit: E >= 0");
    std::vector<SUnitSolution> out;
    if (S.empty()) return out;  // x,y = +-1 never sum to 1
    Z cap;
    mpz_pow_ui(cap.get_mpz_t(), S.primes.back().get_mpz_t(), E);
    std::vector<Z> smooth;
    gen_smooth(S.primes, 0, E, cap, Z(1), smooth);
    std::sort(smooth.begin(), smooth.end());
    smooth.erase(std::unique(smooth.begin(), smooth.end()), smooth.end());

    if (mpz_sizeinbase(cap.get_mpz_t(), 2) <= 62) {
        // u64 fast path with an open-addressing membership table
        std::vector<uint64_t> vals;
        vals.reserve(smooth.size());
        for (const auto& z : smooth) vals.push_back(z.get_ui());
        size_t tbl_bits = 1;
        while ((size_t(1) << tbl_bits) < vals.size() * 4) ++tbl_bits;
        size_t mask = (size_t(1) << tbl_bits) - 1;
        std::vector<uint64_t> table(mask + 1, 0);  // 0 = empty (values >= 1)
        auto slot = [&](uint64_t v) {
            size_t h = (v * 0x9e3779b97f4a7c15ull) >> (64 - tbl_bits);
            while (table[h] != 0 && table[h] != v) h = (h + 1) & mask;
            return h;
        };
        for (uint64_t v : vals) table[slot(v)] = v;
        uint64_t capu = cap.get_ui();
        long n = static_cast<long>(vals.size());
        using Vec = std::vector<SUnitSolution>;
        out = parallel_chunks<Vec>(
            0, n, 64, threads, {},
            [&](long ia, long ib) {
                Vec local;
                for (long i = ia; i < ib; ++i) {
                    uint64_t A = vals[i];
                    for (long j = i; j < n; ++j) {
                        uint64_t Bv = vals[j];
                        if (Bv > capu - A) break;  // vals sorted ascending
                        uint64_t C = A + Bv;
                        if (table[slot(C)] != C) continue;
                        if (std::gcd(A, Bv) != 1) continue;
                        orbit_emit(local, S, Z(static_cast<unsigned long>(A)),
                                   Z(static_cast<unsigned long>(Bv)),
                                   Z(static_cast<unsigned long>(C)));
                    }
                }
                return local;
            },
            [](Vec acc, Vec part) {
                acc.insert(acc.end(), part.begin(), part.end());
                return acc;
            });
    } else {
        // generic big-integer path (small smooth sets only)
        std::set<Z> table(smooth.begin(), smooth.end());
        for (size_t i = 0; i < smooth.size(); ++i) {
            for (size_t j = i; j < smooth.size(); ++j) {
                Z C = smooth[i] + smooth[j];
                if (C > cap) break;
                if (!table.count(C)) continue;
                Z g;
                mpz_gcd(g.get_mpz_t(), smooth[i].get_mpz_t(), smooth[j].get_mpz_t());
                if (g != 1) continue;
                orbit_emit(out, S, smooth[i], smooth[j], C);
            }
        }
    }
    finalize_solutions(out);
    return out;
}

std::vector<SUnitSolution> solve_weighted_sunit(const Q& a, const Q& b,
                                                const PrimeSet& S, int E) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("solve_weighted_sunit: a, b non-zero");
    if (E < 0) throw std::invalid_argument("solve_weighted_sunit: E >= 0");
    std::vector<SUnitSolution> out;
    int t = S.t();
    std::vector<int> z(t, -E);
    auto current_x = [&](int sign) {
        Q x(sign);
        for (int i = 0; i < t; ++i) {
            Z pe;
            mpz_pow_ui(pe.get_mpz_t(), S.primes[i].get_mpz_t(), std::abs(z[i]));
            if (z[i] >= 0)
                x *= pe;
            else
                x /= pe;
        }
        x.canonicalize();
        return x;
    };
    while (true) {
        for (int sign : {1, -1}) {
            Q x = current_x(sign);
            Q y = (1 - a * x) / b;
            y.canonicalize();
            if (is_sunit_within(y, S, E)) emit_solution(out, S, x, y);
        }
        if (t == 0) break;
        int i = 0;
        while (i < t && z[i] == E) z[i++] = -E;
        if (i == t) break;
        ++z[i];
    }
    finalize_solutions(out);
    return out;
}

std::pair<Z, Z> fifth_power_decompose(const Z& A) {
    if (A == 0) throw std::invalid_argument("fifth_power_decompose: A != 0");
    Factorization f = factorize(A);
    Z a = f.sign, p = 1;
    for (const auto& [P, e] : f.factors) {
        Z pe;
        mpz_pow_ui(pe.get_mpz_t(), P.get_mpz_t(), e % 5);
        a *= pe;
        mpz_pow_ui(pe.get_mpz_t(), P.get_mpz_t(), e / 5);
        p *= pe;
    }
    return {a, p};
}

}  // namespace dio
