#include "dio/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dio {

void ZPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

ZPoly ZPoly::from_int_list(const std::vector<long>& v) {
    std::vector<Z> c;
    c.reserve(v.size());
    for (long x : v) c.emplace_back(x);
    return ZPoly(std::move(c));
}

bool operator==(const ZPoly& a, const ZPoly& b) { return a.c == b.c; }

ZPoly add(const ZPoly& a, const ZPoly& b) {
    std::vector<Z> c(std::max(a.c.size(), b.c.size()), Z(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return ZPoly(std::move(c));
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    std::vector<Z> c(std::max(a.c.size(), b.c.size()), Z(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return ZPoly(std::move(c));
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly{};
    std::vector<Z> c(a.c.size() + b.c.size() - 1, Z(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return ZPoly(std::move(c));
}

ZPoly neg(const ZPoly& a) {
    ZPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

ZPoly scalar_mul(const Z& s, const ZPoly& a) {
    if (s == 0) return ZPoly{};
    ZPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

ZPoly derivative(const ZPoly& a) {
    if (a.c.size() <= 1) return ZPoly{};
    std::vector<Z> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * static_cast<long>(i);
    return ZPoly(std::move(c));
}

Z eval(const ZPoly& a, const Z& x) {
    Z r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
    return r;
}

Q eval(const ZPoly& a, const Q& x) {
    Q r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + Q(a.c[i]);
    return r;
}

Z content(const ZPoly& a) {
    Z g = 0;
    for (const auto& x : a.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& a) {
    if (a.is_zero()) return a;
    Z g = content(a);
    ZPoly r = a;
    for (auto& x : r.c) x /= g;
    return r;
}

// Long division of a by b over Q, succeeding only when quotient is integral.
static std::optional<ZPoly> try_divide(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (a.is_zero()) return ZPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Z> rem = a.c;
    std::vector<Z> quot(a.degree() - b.degree() + 1, Z(0));
    for (int i = a.degree(); i >= b.degree(); --i) {
        Z& top = rem[i];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t())) return std::nullopt;
        Z q = top / b.lc();
        quot[i - b.degree()] = q;
        for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= q * b.c[j];
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return ZPoly(std::move(quot));
}

ZPoly divide_exact(const ZPoly& a, const ZPoly& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::invalid_argument("inexact polynomial division");
    return *q;
}

bool divides(const ZPoly& b, const ZPoly& a) { return try_divide(a, b).has_value(); }

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
static ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        int dr = r.degree();
        Z top = r.lc();
        std::vector<Z> nc(std::max(r.c.size(), b.c.size() + (dr - db)), Z(0));
        for (int i = 0; i < dr; ++i) nc[i] = r.c[i] * b.lc();
        for (int j = 0; j <= db; ++j) nc[j + dr - db] -= top * b.c[j];
        nc.resize(dr);  // leading term cancels
        r = ZPoly(std::move(nc));
    }
    return r;
}

ZPoly gcd_z(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() && b.is_zero()) return ZPoly{};
    if (a.is_zero() || b.is_zero()) {
        ZPoly r = primitive_part(a.is_zero() ? b : a);
        if (!r.is_zero() && r.lc() < 0) r = neg(r);
        return scalar_mul(content(a.is_zero() ? b : a), r);
    }
    Z cg;
    {
        Z ca = content(a), cb = content(b);
        mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
    ZPoly u = primitive_part(a), v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        ZPoly r = primitive_part(pseudo_rem(u, v));
        u = std::move(v);
        v = std::move(r);
    }
    if (u.lc() < 0) u = neg(u);
    return scalar_mul(cg, u);
}

ZPoly squarefree_part(const ZPoly& a) {
    if (a.degree() <= 0) return a;
    ZPoly g = gcd_z(a, derivative(a));
    if (g.degree() <= 0) return primitive_part(a);
    return divide_exact(primitive_part(a), primitive_part(g));
}

Z resultant(const ZPoly& a, const ZPoly& b) {
    int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return Z(0);
    if (m == 0) {
        Z r;
        mpz_pow_ui(r.get_mpz_t(), a.c[0].get_mpz_t(), n);
        return r;
    }
    if (n == 0) {
        Z r;
        mpz_pow_ui(r.get_mpz_t(), b.c[0].get_mpz_t(), m);
        return r;
    }
    // Sylvester matrix, fraction-free Gaussian elimination (Bareiss).
    int N = m + n;
    std::vector<std::vector<Z>> M(N, std::vector<Z>(N, Z(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = a.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = b.c[n - j];
    Z prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (M[i][k] != 0) { piv = i; break; }
            if (piv < 0) return Z(0);
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

ZPoly reverse_poly(const ZPoly& a) {
    std::vector<Z> c(a.c.rbegin(), a.c.rend());
    return ZPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Factorization over Q: Zassenhaus with mod-p Cantor-Zassenhaus and Hensel
// lifting. Degrees here are tiny (<= ~12), so the simple algorithms suffice.
// ---------------------------------------------------------------------------

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

// Dense polynomial over F_p, p an odd prime < 2^31. c[i] = coeff of X^i.
struct PPoly {
    std::vector<u64> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};

u64 p_inv(u64 a, u64 p) {  // modular inverse via Fermat
    u64 r = 1, e = p - 2, b = a % p;
    while (e) {
        if (e & 1) r = (u128)r * b % p;
        b = (u128)b * b % p;
        e >>= 1;
    }
    return r;
}

PPoly p_reduce(const ZPoly& a, u64 p) {
    PPoly r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) {
        Z m = a.c[i] % static_cast<long>(p);
        if (m < 0) m += static_cast<long>(p);
        r.c[i] = m.get_ui();
    }
    r.trim();
    return r;
}

PPoly p_mul(const PPoly& a, const PPoly& b, u64 p) {
    if (a.is_zero() || b.is_zero()) return {};
    PPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + (u128)a.c[i] * b.c[j]) % p;
    }
    r.trim();
    return r;
}

PPoly p_sub(const PPoly& a, const PPoly& b, u64 p) {
    PPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + p - b.c[i]) % p;
    r.trim();
    return r;
}

// a mod b
PPoly p_rem(PPoly a, const PPoly& b, u64 p) {
    u64 inv = p_inv(b.c.back(), p);
    int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        int da = a.degree();
        u64 f = (u128)a.c.back() * inv % p;
        for (int j = 0; j <= db; ++j)
            a.c[da - db + j] = (a.c[da - db + j] + p - (u128)f * b.c[j] % p) % p;
        a.trim();
    }
    return a;
}

PPoly p_divexact(PPoly a, const PPoly& b, u64 p) {
    u64 inv = p_inv(b.c.back(), p);
    int db = b.degree();
    std::vector<u64> q(std::max(0, a.degree() - db + 1), 0);
    while (!a.is_zero() && a.degree() >= db) {
        int da = a.degree();
        u64 f = (u128)a.c.back() * inv % p;
        q[da - db] = f;
        for (int j = 0; j <= db; ++j)
            a.c[da - db + j] = (a.c[da - db + j] + p - (u128)f * b.c[j] % p) % p;
        a.trim();
    }
    PPoly r;
    r.c = std::move(q);
    r.trim();
    return r;
}

PPoly p_gcd(PPoly a, PPoly b, u64 p) {
    while (!b.is_zero()) {
        PPoly r = p_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {  // make monic
        u64 inv = p_inv(a.c.back(), p);
        for (auto& x : a.c) x = (u128)x * inv % p;
    }
    return a;
}

PPoly p_monic(PPoly a, u64 p) {
    if (a.is_zero()) return a;
    u64 inv = p_inv(a.c.back(), p);
    for (auto& x : a.c) x = (u128)x * inv % p;
    return a;
}

PPoly p_derivative(const PPoly& a, u64 p) {
    PPoly r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = (u128)a.c[i] * (i % p) % p;
    r.trim();
    return r;
}

PPoly p_powmod(PPoly base, Z e, const PPoly& mod, u64 p) {
    PPoly r;
    r.c = {1};
    base = p_rem(std::move(base), mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = p_rem(p_mul(r, base, p), mod, p);
        base = p_rem(p_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

// Equal-degree splitting (Cantor-Zassenhaus), f monic squarefree product of
// irreducibles of degree d.
void p_edf(const PPoly& f, int d, u64 p, std::mt19937_64& rng, std::vector<PPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Z e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d);
    e = (e - 1) / 2;
    while (true) {
        PPoly a;
        a.c.resize(f.degree());
        for (auto& x : a.c) x = rng() % p;
        a.trim();
        if (a.degree() < 1) continue;
        PPoly b = p_powmod(a, e, f, p);
        if (b.c.empty()) continue;
        b.c[0] = (b.c[0] + p - 1) % p;
        b.trim();
        PPoly g = p_gcd(f, b, p);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            p_edf(g, d, p, rng, out);
            p_edf(p_divexact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// Factor monic squarefree f over F_p into monic irreducibles.
std::vector<PPoly> p_factor_sqfree(PPoly f, u64 p) {
    std::vector<PPoly> out;
    std::mt19937_64 rng(0x5eed1234u);  // deterministic
    PPoly x;
    x.c = {0, 1};
    PPoly h = x;
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.push_back(f);
            break;
        }
        h = p_powmod(h, Z(static_cast<unsigned long>(p)), f, p);  // h = x^(p^d) mod f
        PPoly g = p_gcd(f, p_sub(h, x, p), p);
        if (g.degree() > 0) {
            p_edf(g, d, p, rng, out);
            f = p_divexact(f, g, p);
            h = p_rem(std::move(h), f, p);
        }
    }
    return out;
}

// Symmetric representative of a mod m in (-m/2, m/2].
Z sym_mod(const Z& a, const Z& m) {
    Z r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly lift_to_z(const PPoly& a) {
    std::vector<Z> c(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = static_cast<unsigned long>(a.c[i]);
    return ZPoly(std::move(c));
}

ZPoly zpoly_mod_sym(const ZPoly& a, const Z& m) {
    ZPoly r = a;
    for (auto& x : r.c) x = sym_mod(x, m);
    r.trim();
    return r;
}

ZPoly zpoly_mod(const ZPoly& a, const Z& m) {
    ZPoly r = a;
    for (auto& x : r.c) {
        x %= m;
        if (x < 0) x += m;
    }
    r.trim();
    return r;
}

// Remainder of a by monic b, coefficients reduced mod m.
ZPoly zpoly_rem_monic(ZPoly a, const ZPoly& b, const Z& m) {
    int db = b.degree();
    a = zpoly_mod(a, m);
    while (!a.is_zero() && a.degree() >= db) {
        int da = a.degree();
        Z f = a.lc();
        for (int j = 0; j <= db; ++j) {
            a.c[da - db + j] -= f * b.c[j];
            a.c[da - db + j] %= m;
        }
        a.trim();
        a = zpoly_mod(a, m);
    }
    return a;
}

// Hensel lift: f ≡ g*h (mod p), s*g + t*h ≡ 1 (mod p), h monic.
// Lift to f ≡ g*h (mod p^k). Linear lifting, plenty fast at these sizes.
void hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, const ZPoly& s, const ZPoly& t,
                 u64 p, int k) {
    Z m(static_cast<unsigned long>(p));
    Z pk = m;
    for (int step = 1; step < k; ++step) {
        Z pk1 = pk * m;
        // e = f - g*h mod pk1
        ZPoly e = zpoly_mod(sub(f, mul(g, h)), pk1);
        // correction: dg = (s*e mod h), dh = t*e + g*floor stuff; use standard:
        // q,r with s*e = q*h + r  ->  g += t*e + q*g reduced, h += r
        // (all mod pk1; e divisible by pk)
        ZPoly se = zpoly_mod(mul(s, e), pk1);
        // divide se by monic h: se = q*h + r
        ZPoly r = se, q;
        {
            int dh = h.degree();
            std::vector<Z> qc(std::max(0, r.degree() - dh + 1), Z(0));
            while (!r.is_zero() && r.degree() >= dh) {
                int dr = r.degree();
                Z fq = r.lc();
                qc[dr - dh] += fq;
                for (int j = 0; j <= dh; ++j) {
                    r.c[dr - dh + j] -= fq * h.c[j];
                    r.c[dr - dh + j] %= pk1;
                }
                r.trim();
                r = zpoly_mod(r, pk1);
            }
            q = ZPoly(std::move(qc));
        }
        ZPoly dh_corr = r;                                        // h += r
        ZPoly dg_corr = zpoly_mod(add(mul(t, e), mul(q, g)), pk1);  // g += ...
        g = zpoly_mod(add(g, dg_corr), pk1);
        h = zpoly_mod(add(h, dh_corr), pk1);
        pk = pk1;
    }
    g = zpoly_mod(g, pk);
    h = zpoly_mod(h, pk);
}

// Extended gcd over F_p: s*a + t*b = 1 (a, b coprime mod p).
void p_extgcd(const PPoly& a, const PPoly& b, u64 p, PPoly& s, PPoly& t) {
    PPoly r0 = a, r1 = b;
    PPoly s0, s1, t0, t1;
    s0.c = {1};
    t1.c = {1};
    while (!r1.is_zero()) {
        // divide r0 by r1
        PPoly q = p_divexact(r0, r1, p);  // works since p_divexact computes quotient
        PPoly r2 = p_sub(r0, p_mul(q, r1, p), p);
        PPoly s2 = p_sub(s0, p_mul(q, s1, p), p);
        PPoly t2 = p_sub(t0, p_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd (unit); normalize to 1
    u64 inv = p_inv(r0.c.back(), p);
    for (auto& x : s0.c) x = (u128)x * inv % p;
    for (auto& x : t0.c) x = (u128)x * inv % p;
    s = s0;
    t = t0;
}

// Lift the full mod-p factorization of primitive squarefree f to mod p^k,
// monic factors. Divide and conquer on the factor list.
void hensel_multi(const ZPoly& f, const std::vector<PPoly>& facs, size_t lo, size_t hi,
                  u64 p, int k, std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        // f ≡ lc * facs[lo] mod p up to the monic convention; record monic lift
        Z pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
        // make f monic mod p^k: multiply by inverse of lc
        Z lcinv;
        Z l = f.lc() % pk;
        if (l < 0) l += pk;
        mpz_invert(lcinv.get_mpz_t(), l.get_mpz_t(), pk.get_mpz_t());
        ZPoly fm = f;
        for (auto& x : fm.c) {
            x *= lcinv;
            x %= pk;
            if (x < 0) x += pk;
        }
        out.push_back(zpoly_mod(fm, pk));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    PPoly gp, hp;
    gp.c = {1};
    hp.c = {1};
    for (size_t i = lo; i < mid; ++i) gp = p_mul(gp, facs[i], p);
    for (size_t i = mid; i < hi; ++i) hp = p_mul(hp, facs[i], p);
    // f ≡ lc * gp * hp (mod p); fold lc into the g side so h stays monic
    // (hensel_pair divides by h).
    u64 lcm = [&] {
        Z l = f.lc() % static_cast<long>(p);
        if (l < 0) l += static_cast<long>(p);
        return l.get_ui();
    }();
    PPoly gp_scaled = gp;
    for (auto& x : gp_scaled.c) x = (u128)x * lcm % p;
    PPoly s, t;
    p_extgcd(gp_scaled, hp, p, s, t);
    ZPoly g = lift_to_z(gp_scaled), h = lift_to_z(hp);
    hensel_pair(f, g, h, lift_to_z(s), lift_to_z(t), p, k);
    hensel_multi(g, facs, lo, mid, p, k, out);
    hensel_multi(h, facs, mid, hi, p, k, out);
}

// Factor a primitive squarefree polynomial (degree >= 1) into irreducibles.
std::vector<ZPoly> factor_sqfree_primitive(const ZPoly& f) {
    if (f.degree() == 1) {
        ZPoly g = f;
        if (g.lc() < 0) g = neg(g);
        return {g};
    }
    static const u64 kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                  37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                                  79, 83, 89, 97, 101, 103, 107, 109, 113, 127};
    u64 p = 0;
    PPoly fp;
    for (u64 cand : kPrimes) {
        if (mpz_divisible_ui_p(f.lc().get_mpz_t(), cand)) continue;
        fp = p_reduce(f, cand);
        if (fp.degree() != f.degree()) continue;
        PPoly g = p_gcd(fp, p_derivative(fp, cand), cand);
        if (g.degree() == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw std::runtime_error("no suitable prime for factorization");

    std::vector<PPoly> pfacs = p_factor_sqfree(p_monic(fp, p), p);
    if (pfacs.size() == 1) {
        ZPoly g = f;
        if (g.lc() < 0) g = neg(g);
        return {g};
    }
    std::sort(pfacs.begin(), pfacs.end(),
              [](const PPoly& a, const PPoly& b) { return a.c < b.c; });

    // Lift bound: p^k > 2 * Mignotte-ish bound * |lc|.
    Z maxc = 0;
    for (const auto& x : f.c) {
        Z a = abs(x);
        if (a > maxc) maxc = a;
    }
    Z bound = maxc * abs(f.lc()) * (f.degree() + 1);
    Z two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, f.degree() + 1);
    bound *= two_pow;
    int k = 1;
    Z pk(static_cast<unsigned long>(p));
    while (pk <= 2 * bound) {
        pk *= static_cast<long>(p);
        ++k;
    }

    std::vector<ZPoly> lifted;
    hensel_multi(zpoly_mod(f, pk), pfacs, 0, pfacs.size(), p, k, lifted);

    // Recombination over subsets.
    std::vector<ZPoly> result;
    ZPoly rem = f;
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
    size_t subset_size = 1;
    while (2 * subset_size <= alive.size()) {
        bool found = false;
        std::vector<size_t> idx(subset_size);
        for (size_t i = 0; i < subset_size; ++i) idx[i] = i;
        while (true) {
            // candidate = lc(rem) * prod lifted[alive[idx]] mod pk, symmetric
            ZPoly cand;
            cand.c = {rem.lc()};
            for (size_t i : idx) cand = zpoly_mod(mul(cand, lifted[alive[i]]), pk);
            cand = zpoly_mod_sym(cand, pk);
            cand = primitive_part(cand);
            if (!cand.is_zero() && divides(cand, rem)) {
                if (cand.lc() < 0) cand = neg(cand);
                result.push_back(cand);
                rem = divide_exact(rem, cand);
                std::vector<int> next;
                for (size_t i = 0, j = 0; i < alive.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    next.push_back(alive[i]);
                }
                alive = std::move(next);
                found = true;
                break;
            }
            // next subset
            int pos = static_cast<int>(subset_size) - 1;
            while (pos >= 0 && idx[pos] == alive.size() - subset_size + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < subset_size; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++subset_size;
    }
    if (rem.degree() > 0) {
        if (rem.lc() < 0) rem = neg(rem);
        result.push_back(primitive_part(rem));
    }
    return result;
}

}  // namespace

ZPolyFactorization factor_z(const ZPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("factor_z: zero polynomial");
    ZPolyFactorization out;
    Z cont = content(a);
    if (a.lc() < 0) cont = -cont;
    out.content = cont;
    ZPoly f = a;
    for (auto& x : f.c) x /= cont;
    if (f.degree() == 0) return out;

    // Squarefree decomposition (Yun).
    ZPoly fp = derivative(f);
    ZPoly g = gcd_z(f, fp);
    std::vector<std::pair<ZPoly, int>> sqfree;  // (squarefree part, multiplicity)
    if (g.degree() == 0) {
        sqfree.emplace_back(f, 1);
    } else {
        ZPoly w = divide_exact(f, g);
        ZPoly y = divide_exact(fp, g);
        int i = 1;
        while (w.degree() > 0) {
            ZPoly z = sub(y, derivative(w));
            ZPoly h = gcd_z(w, z);
            if (h.degree() > 0 || h.c != std::vector<Z>{Z(1)}) {
                if (h.degree() > 0) sqfree.emplace_back(h, i);
                w = divide_exact(w, h);
                y = divide_exact(z, h);
            } else {
                y = z;
            }
            ++i;
        }
    }
    for (auto& [sf, m] : sqfree) {
        for (auto& irr : factor_sqfree_primitive(sf)) {
            out.factors.emplace_back(irr, m);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree())
            return x.first.degree() < y.first.degree();
        if (x.first.c != y.first.c) return x.first.c < y.first.c;
        return x.second < y.second;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Durand-Kerner in double precision.
// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> complex_roots_double(const ZPoly& a) {
    int n = a.degree();
    if (n <= 0) return {};
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = a.c[i].get_d();
    for (int i = 0; i <= n; ++i) c[i] /= a.c[n].get_d();
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1, 0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    auto evalc = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int i = n; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0;
        double span = 0;
        for (int i = 0; i < n; ++i) span = std::max(span, std::abs(r[i]));
        for (int i = 0; i < n; ++i) {
            std::complex<double> num = evalc(r[i]);
            std::complex<double> den(1, 0);
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (r[i] - r[j]);
            std::complex<double> d = num / den;
            r[i] -= d;
            delta = std::max(delta, std::abs(d));
        }
        if (delta < 1e-14 * (1 + span)) break;
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (auto& z : r) out.emplace_back(z.real(), z.imag());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> real_roots_double(const ZPoly& a) {
    std::vector<double> out;
    double scale = 0;
    for (const auto& x : a.c) scale = std::max(scale, std::abs(x.get_d()));
    for (auto& [re, im] : complex_roots_double(a)) {
        if (std::abs(im) < 1e-8 * (1 + std::abs(re))) out.push_back(re);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(const ZPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
        if (a.c[i] == 0) continue;
        if (!first) os << (a.c[i] > 0 ? " + " : " - ");
        else if (a.c[i] < 0) os << "-";
        Z v = abs(a.c[i]);
        if (v != 1 || i == 0) os << v.get_str();
        if (i > 0) {
            if (v != 1) os << "*";
            os << "X";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace dio
